"""Irreducibility testing (Holt-Rees form of Norton's test), composition factors, isomorphism."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .config import get_config
from .fp_linalg import (Subspace, charpoly, generalized_eigenspace, identity, matmul, nullspace,
                        rank, solve)
from .partitions import Partition, _as_partition, dominance_leq, enumerate_p_regular, residue_content
from .polyfp import degree, eval_at_matrix, low_degree_factors
from .reps import (CapError, Rep, RepError, _HomSolver, hom_space, quotient_rep,
                   random_elements, spin_up_many, sub_rep)

__all__ = [
    "Verdict", "ABS_IRR", "IRR_NOT_ABS", "REDUCIBLE", "meataxe", "composition_factors",
    "identify_irreducible", "dominating_regular", "is_isomorphic", "jm_elements", "content_of_irreducible",
    "IdentificationError",
]

ABS_IRR = "AbsolutelyIrreducible"
IRR_NOT_ABS = "Irreducible_NotAbsolute"
REDUCIBLE = "Reducible"


class IdentificationError(RuntimeError):
    """An irreducible factor matched no D^mu (never expected for S_n over GF(p))."""


@dataclass
class Verdict:
    kind: str
    submodule: Optional[Subspace] = None
    end_dim: Optional[int] = None
    words: int = 0

    @property
    def absolutely_irreducible(self) -> bool:
        return self.kind == ABS_IRR

    def __str__(self):
        return self.kind


def _end_dim_from_kernel(V: Rep, theta: np.ndarray) -> int:
    """dim End(V) for irreducible V: an endomorphism is fixed by the image of one
    kernel vector of theta, which must lie in ker theta again."""
    K = nullspace(theta, V.p)
    solver = _HomSolver(V, V)
    solver.add_seed(K.basis[0], K.basis)
    if solver.eb.rank != V.dim:
        raise RepError("kernel vector did not generate an irreducible module")
    return len(solver.result())


def meataxe(V: Rep, seed: Optional[int] = None, word_cap: Optional[int] = None,
            max_factor_degree: int = 12) -> Verdict:
    """Decide irreducibility of V; a reducible verdict carries a proper submodule."""
    cfg = get_config()
    seed = cfg.seed if seed is None else seed
    word_cap = cfg.word_cap if word_cap is None else word_cap
    d, p = V.dim, V.p
    if d == 0:
        raise RepError("zero module")
    if d == 1:
        return Verdict(ABS_IRR, end_dim=1)
    if not V.mats:
        return Verdict(REDUCIBLE, submodule=Subspace.from_rows(identity(d)[:1], p))
    mats_t = V.transposed_mats()
    mats_tt = tuple(np.ascontiguousarray(m) for m in V.mats)   # transposes of the transposes
    stream = random_elements([V], seed=seed)
    rng = np.random.default_rng(seed + 104729)
    while stream.drawn < word_cap:
        (a,) = stream.algebra_element()
        cp = charpoly(a, p)
        for f in low_degree_factors(cp, p, min(d, max_factor_degree), rng):
            deg = degree(f)
            theta = eval_at_matrix(f, a, p)
            K = nullspace(theta, p)
            eb = spin_up_many(mats_t, K.basis[0], p)
            if eb.rank < d:
                return Verdict(REDUCIBLE, submodule=eb.subspace(), words=stream.drawn)
            if K.dim != deg:
                continue
            Kt = nullspace(theta.T, p)
            ebd = spin_up_many(mats_tt, Kt.basis[0], p)
            if ebd.rank < d:
                # annihilator of a proper submodule of the dual
                sub = nullspace(ebd.subspace().basis, p)
                return Verdict(REDUCIBLE, submodule=sub, words=stream.drawn)
            if deg == 1:
                return Verdict(ABS_IRR, end_dim=1, words=stream.drawn)
            e = _end_dim_from_kernel(V, theta)
            kind = ABS_IRR if e == 1 else IRR_NOT_ABS
            return Verdict(kind, end_dim=e, words=stream.drawn)
    raise CapError(f"meataxe gave no verdict within {word_cap} random elements (dim {d})")


# ---------------------------------------------------------------- Jucys-Murphy content

def jm_elements(V: Rep, upto: Optional[int] = None) -> list:
    """[L_1, ..., L_m] with L_m = sum_{j<m} (j, m), for an S_n-module V."""
    if not V.is_symmetric_group_rep:
        raise RepError("Jucys-Murphy elements need a symmetric-group module")
    n = V.n if upto is None else upto
    p, s = V.p, V.mats
    out = [np.zeros((V.dim, V.dim), dtype=np.int64)]
    for m in range(2, n + 1):
        T = s[m - 2]
        L = T.copy()
        for j in range(m - 2, 0, -1):
            T = matmul(matmul(s[j - 1], T, p), s[j - 1], p)
            L = (L + T) % p
        out.append(L)
    return out


def content_of_irreducible(F: Rep) -> tuple:
    """Residue content read off one simultaneous generalized eigenvector of L_1..L_n."""
    p = F.p
    basis = identity(F.dim)          # rows span an invariant subspace for all L_m
    counts = [0] * p
    counts[0] = 1                    # L_1 = 0
    for L in jm_elements(F)[1:]:
        img = matmul(basis, L.T, p)
        X = solve(basis.T, img.T, p)
        if X is None:
            raise RepError("Jucys-Murphy elements do not preserve the subspace")
        for c in range(p):
            ge = generalized_eigenspace(X, c, p)
            if ge.dim:
                counts[c] += 1
                basis = matmul(ge.basis, basis, p)
                break
        else:
            raise IdentificationError("Jucys-Murphy element without eigenvalue in GF(p)")
    return tuple(counts)


# ---------------------------------------------------------------- identification

def identify_irreducible(F: Rep, seed: int = 0, candidates: Optional[Sequence] = None) -> Partition:
    """The p-regular mu with F isomorphic to D^mu (searched among ``candidates`` if given)."""
    from .specht import irreducible
    n, p = F.n, F.p
    cands = list(candidates) if candidates is not None else enumerate_p_regular(n, p)
    cont = content_of_irreducible(F)
    cands = [mu for mu in cands if residue_content(mu, p) == cont]
    if len(cands) > 1:
        cands = [mu for mu in cands if irreducible(mu, p).dim == F.dim]
    for mu in cands:
        if irreducible(mu, p).dim == F.dim and hom_space(irreducible(mu, p), F, seed=seed).dim:
            return mu
    raise IdentificationError(f"no D^mu matches an irreducible factor of dimension {F.dim}")


def dominating_regular(mu, p: int) -> list:
    """p-regular nu dominating mu: the possible composition factors of M^mu and S^mu."""
    mu = _as_partition(mu)
    return [nu for nu in enumerate_p_regular(mu.n, p) if dominance_leq(mu, nu)]


def composition_factors(V: Rep, seed: Optional[int] = None, cap: Optional[int] = None,
                        candidates: Optional[Sequence] = None) -> Counter:
    """Multiset {mu: multiplicity} of composition factors of an S_n-module."""
    cfg = get_config()
    cap = cfg.dim_cap if cap is None else cap
    seed = cfg.seed if seed is None else seed
    if not V.is_symmetric_group_rep:
        raise RepError("composition factors are identified for S_n-modules")
    if V.dim > cap:
        raise CapError(f"dimension {V.dim} exceeds cap {cap}")
    out: Counter = Counter()
    stack = [V]
    while stack:
        W = stack.pop()
        if W.dim == 0:
            continue
        v = meataxe(W, seed=seed)
        if v.kind == REDUCIBLE:
            stack.append(sub_rep(W, v.submodule))
            stack.append(quotient_rep(W, v.submodule))
        elif v.kind == ABS_IRR:
            out[identify_irreducible(W, seed=seed, candidates=candidates)] += 1
        else:
            raise IdentificationError("S_n-module factor that is not absolutely irreducible")
    return out


# ---------------------------------------------------------------- isomorphism

def is_isomorphic(V: Rep, W: Rep, seed: int = 0, tries: int = 20, enum_cap: int = 3) -> bool:
    """True iff some intertwiner V -> W is invertible."""
    if V.p != W.p:
        raise RepError("modules over different fields")
    if V.dim != W.dim:
        return False
    H = hom_space(V, W, seed=seed)
    if not H.basis:
        return False
    p, d = V.p, V.dim
    if len(H.basis) == 1:
        return rank(H.basis[0], p) == d
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        c = rng.integers(0, p, size=len(H.basis))
        T = sum(int(ci) * B for ci, B in zip(c, H.basis)) % p
        if rank(T, p) == d:
            return True
    if len(H.basis) <= enum_cap:
        for c in product(range(p), repeat=len(H.basis)):
            if not any(c):
                continue
            T = sum(int(ci) * B for ci, B in zip(c, H.basis)) % p
            if rank(T, p) == d:
                return True
        return False
    raise CapError("isomorphism test inconclusive: Hom space too large for enumeration")
