"""Block components e_i V, f_i V via Jucys-Murphy eigenspaces, and statistics derived from them."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .fp_linalg import generalized_eigenspace
from .meataxe import composition_factors, dominating_regular, jm_elements
from .partitions import (Partition, PartitionError, _as_partition, enumerate_p_regular,
                         epsilon, gamma, is_p_regular, residue_content)
from .config import get_config
from .perm_groups import (Permutation, _coset_key, coset_action, point_stabilizer, symmetric,
                          young_subgroup)
from .reps import (Rep, RepError, as_symmetric, end_dim, fixed_points, hom_space, induce,
                   restrict, sub_rep)
from .specht import irreducible, subset_module

__all__ = [
    "BlockDecomposition", "block_decomposition", "e_component", "f_component",
    "restriction_end_dim", "m_k", "socle_label", "james_two_row_multiplicity",
    "contains_to_base", "two_row_label", "perm_module_signature", "predicted_specht_factors",
    "predicted_perm_factors",
]


@dataclass
class BlockDecomposition:
    source: Rep
    components: list      # (residue, Subspace, Rep)

    def dims(self) -> dict:
        return {i: U.dim for i, U, _ in self.components}


def _jucys_murphy_last(V: Rep) -> np.ndarray:
    return jm_elements(V)[-1]


def block_decomposition(V: Rep) -> BlockDecomposition:
    """Generalized eigenspaces of L_n on V, as modules for S_{n-1}."""
    if not V.is_symmetric_group_rep:
        raise RepError("block decomposition needs an S_n-module")
    n, p = V.n, V.p
    L = _jucys_murphy_last(V)
    H = point_stabilizer(n)
    R = restrict(V, H)
    comps = []
    for i in range(p):
        U = generalized_eigenspace(L, i, p)
        if U.dim:
            comps.append((i, U, as_symmetric(sub_rep(R, U), n - 1)))
        else:
            comps.append((i, U, None))
    return BlockDecomposition(V, comps)


def e_component(V: Rep, i: int) -> Optional[Rep]:
    """e_i V as an S_{n-1}-module (None when zero)."""
    for r, U, W in block_decomposition(V).components:
        if r == i % V.p:
            return W
    return None


def f_component(V: Rep, i: int) -> Optional[Rep]:
    """f_i V: the residue-i generalized eigenspace of x (x) v -> x L_{n+1} (x) v on V induced to S_{n+1}.

    Right multiplication by L_{n+1} is well defined on the induced module because
    L_{n+1} commutes with S_n, and it is an S_{n+1}-endomorphism, so its
    eigenspaces are submodules (the left action of L_{n+1} has no such property).
    """
    if not V.is_symmetric_group_rep:
        raise RepError("f_i needs an S_n-module")
    n, p, d = V.n, V.p, V.dim
    H = young_subgroup([n, 1])
    lifted = Rep(H, V.mats, p, label=V.label, dimension=d)
    G = symmetric(n + 1)
    Ind = induce(lifted, G)
    reps, _ = coset_action(G, H, cap=max(1, get_config().dim_cap // max(d, 1)))
    index = {_coset_key(r, H): j for j, r in enumerate(reps)}
    m = len(reps)
    R = np.zeros((m * d, m * d), dtype=np.int64)
    for j in range(1, n + 1):
        t = Permutation.transposition(n + 1, j, n + 1)
        for a, r in enumerate(reps):
            y = r * t
            b = index[_coset_key(y, H)]
            h = reps[b].inverse() * y
            R[b * d:(b + 1) * d, a * d:(a + 1) * d] += lifted.evaluate(h)
    U = generalized_eigenspace(R % p, i % p, p)
    return sub_rep(Ind, U) if U.dim else None


def restriction_end_dim(lam, p: int) -> int:
    lam = _as_partition(lam)
    D = irreducible(lam, p)
    return end_dim(restrict(D, point_stabilizer(lam.n)))


def m_k(lam, p: int, k: int) -> int:
    """dim End over S_{n-k} x S_k of the restriction of D^lambda."""
    lam = _as_partition(lam)
    D = irreducible(lam, p)
    G = young_subgroup([lam.n - k, k]) if k else symmetric(lam.n)
    return end_dim(restrict(D, G))


def socle_label(lam, i: int, p: int) -> Optional[Partition]:
    """The mu with Hom(D^mu, e_i D^lambda) != 0, expected unique."""
    lam = _as_partition(lam)
    if epsilon(lam, i, p) == 0:
        raise PartitionError(f"e_{i} D^{lam} is zero")
    E = e_component(irreducible(lam, p), i)
    want = tuple(a - b for a, b in zip(residue_content(lam, p), gamma(i, p)))
    hits = []
    for mu in enumerate_p_regular(lam.n - 1, p):
        if residue_content(mu, p) != want:
            continue
        if hom_space(irreducible(mu, p), E).dim:
            hits.append(mu)
    return hits[0] if len(hits) == 1 else None


# ---------------------------------------------------------------- two-row combinatorics

def _digits(a: int, p: int) -> list:
    out = []
    while a:
        out.append(a % p)
        a //= p
    return out


def contains_to_base(a: int, b: int, p: int) -> bool:
    """a contains b to base p: b has fewer p-adic digits and each digit is 0 or a's digit."""
    if b == 0:
        return True
    if a <= 0:
        return False
    da, db = _digits(a, p), _digits(b, p)
    if len(db) >= len(da):
        return False
    return all(x == 0 or x == da[t] for t, x in enumerate(db))


def james_two_row_multiplicity(n: int, k: int, j: int, p: int) -> int:
    """[S^(n-k,k) : D^(n-j,j)]."""
    if not 0 <= j <= k <= n // 2:
        raise PartitionError("needs 0 <= j <= k <= n/2")
    return int(contains_to_base(n - 2 * j + 1, k - j, p))


def two_row_label(n: int, j: int) -> Partition:
    return Partition.of(n - j, j)


def predicted_specht_factors(n: int, k: int, p: int) -> Counter:
    out: Counter = Counter()
    for j in range(k + 1):
        lab = two_row_label(n, j)
        if james_two_row_multiplicity(n, k, j, p) and is_p_regular(lab, p):
            out[lab] += 1
    return out


def predicted_perm_factors(n: int, k: int, p: int) -> Counter:
    """Factors of M_k from the Specht filtration S_k | ... | S_0 and the two-row rule."""
    out: Counter = Counter()
    for j in range(k + 1):
        out.update(predicted_specht_factors(n, j, p))
    return out


def perm_module_signature(n: int, p: int, k: int, seed: int = 0) -> dict:
    """Composition factors of M_k and Hom dimensions with the two-row irreducibles D_j."""
    if not 0 <= k <= 3 or 2 * k > n:
        raise PartitionError("needs 0 <= k <= 3 and k <= n/2")
    M = subset_module(n, k, p)
    factors = composition_factors(M, seed=seed, candidates=dominating_regular(Partition.of(n - k, k), p))
    hom_in, hom_out = {}, {}
    for j in range(k + 1):
        lab = two_row_label(n, j)
        if not is_p_regular(lab, p):
            continue
        D = irreducible(lab, p)
        hom_in[j] = hom_space(D, M, seed=seed).dim
        hom_out[j] = hom_space(M, D, seed=seed).dim
    return {
        "n": n, "p": p, "k": k,
        "factors": [[str(mu), factors[mu]]
                    for mu in sorted(factors, key=lambda m: m.parts, reverse=True)],
        "hom_in": hom_in,
        "hom_out": hom_out,
        "invariants_dim": fixed_points(M).dim,
    }
