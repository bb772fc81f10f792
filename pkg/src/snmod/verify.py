"""Self-check suites: each recomputes a family of facts two independent ways and reports mismatches."""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .branching import (block_decomposition, perm_module_signature, predicted_perm_factors,
                        predicted_specht_factors, two_row_label)
from .classifier import (FAMILIES, describe, ground_truth, named_group, survey,
                         theorem_TNat_decide)
from .hom_tools import act, difference_module, eta, wilson_rank, x_element
from .meataxe import composition_factors, dominating_regular, is_isomorphic
from .partitions import (Partition, _as_partition, e_tilde, enumerate_p_regular, epsilon, f_tilde,
                         gamma, mullineux, parse_partition, phi, residue_content, signature,
                         special_partition)
from .perm_groups import (Permutation, all_subgroups, alternating, group, point_stabilizer,
                          symmetric, wreath)
from .reps import (end_dim, exterior_square, fixed_points, restrict, sign_twist,
                   wedge_index, wedge_vector)
from .specht import dual_specht, irreducible, specht, subset_module

__all__ = ["SuiteResult", "SUITES", "run_suite", "two_normal_row_check"]


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)
    elapsed_s: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, what: str):
        self.checked += 1
        if not ok:
            self.failures.append(what)

    def as_dict(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "checked": self.checked,
                "failures": list(self.failures), "info": self.info}


# ---------------------------------------------------------------- crystal

def two_normal_row_check(lam) -> Optional[str]:
    """For p = 2 and eps_0 + eps_1 = 2: normal rows are {1, b_1}, conormal rows
    {b_t - 1, h, h + 1}, and residues alternate along b_1 < ... < b_t.
    b_k are the rows whose removable node has the residue of the row above.
    Returns None when all three hold, else a description."""
    lam = _as_partition(lam)
    h = lam.h
    a = {k: (lam[k] - k) % 2 for k in range(1, h + 1)}
    b = [k for k in range(2, h + 1) if a[k] == a[k - 1]]
    normal = sorted(nd[0] for i in (0, 1) for nd in signature(lam, i, 2).normal)
    conormal = sorted(nd[0] for i in (0, 1) for nd in signature(lam, i, 2).conormal)
    if not b:
        return f"{lam}: no repeated residue rows"
    if normal != sorted([1, b[0]]):
        return f"{lam}: normal rows {normal}, b_1 = {b[0]}"
    if conormal != sorted([b[-1] - 1, h, h + 1]):
        return f"{lam}: conormal rows {conormal}, b_t = {b[-1]}, h = {h}"
    if any(a[b[k]] == a[b[k - 1]] for k in range(1, len(b))):
        return f"{lam}: residues along b do not alternate"
    return None


def crystal(n_max: int = 18, primes=(2, 3)) -> SuiteResult:
    res = SuiteResult("crystal")
    qualifying = 0
    for p in primes:
        for n in range(n_max + 1):
            for lam in enumerate_p_regular(n, p):
                eps = [epsilon(lam, i, p) for i in range(p)]
                phis = [phi(lam, i, p) for i in range(p)]
                res.check(sum(phis) - sum(eps) == 1, f"p={p} {lam}: sum phi - sum eps != 1")
                for i in range(p):
                    mu = e_tilde(lam, i, p)
                    if mu is not None:
                        res.check(f_tilde(mu, i, p) == lam, f"p={p} {lam}: f~e~_{i} != id")
                        want = tuple(x - y for x, y in zip(residue_content(lam, p), gamma(i, p)))
                        res.check(residue_content(mu, p) == want, f"p={p} {lam}: content of e~_{i}")
                    nu = f_tilde(lam, i, p)
                    if nu is not None:
                        res.check(e_tilde(nu, i, p) == lam, f"p={p} {lam}: e~f~_{i} != id")
                if p == 2 and sum(eps) == 2:
                    qualifying += 1
                    bad = two_normal_row_check(lam)
                    res.check(bad is None, bad or "")
    res.info["two_normal_partitions"] = qualifying
    return res


# ---------------------------------------------------------------- Mullineux

def mullineux_suite(n_max: int = 16, primes=(2, 3, 5), twist_n: int = 7, twist_p: int = 3) -> SuiteResult:
    res = SuiteResult("mullineux")
    for p in primes:
        for n in range(n_max + 1):
            for lam in enumerate_p_regular(n, p):
                m = mullineux(lam, p)
                res.check(m.n == n and mullineux(m, p) == lam, f"p={p} {lam}: not an involution")
    res.check(mullineux((3, 2, 2), 3) == Partition.of(5, 1, 1), "(3,2,2) at p=3")
    res.check(mullineux((4, 1, 1), 3) == Partition.of(4, 1, 1), "(4,1,1) at p=3")
    twisted = 0
    for n in range(1, twist_n + 1):
        for lam in enumerate_p_regular(n, twist_p):
            D = irreducible(lam, twist_p)
            DM = irreducible(mullineux(lam, twist_p), twist_p)
            res.check(is_isomorphic(sign_twist(D), DM), f"p={twist_p} {lam}: sign twist")
            twisted += 1
    res.info["sign_twists"] = twisted
    return res


# ---------------------------------------------------------------- dimensions

def dims(alpha_range=(4, 10), beta_range=(5, 12), primes=(2, 3)) -> SuiteResult:
    res = SuiteResult("dims")
    for p in primes:
        for n in range(alpha_range[0], alpha_range[1] + 1):
            d = irreducible(special_partition("alpha", n), p).dim
            res.check(d == n - 1 - (n % p == 0), f"p={p} n={n}: dim D^alpha = {d}")
    for n in range(beta_range[0], beta_range[1] + 1):
        d = irreducible(special_partition("beta", n), 2).dim
        res.check(d == 2 ** ((n - 1) // 2), f"n={n}: dim D^beta = {d}")
    return res


# ---------------------------------------------------------------- restriction to S_{n-1}

def branching(n_max: int = 9, primes=(2, 3), dim_cap: int = 400) -> SuiteResult:
    """End of the restriction against sum eps, and the block components e_i D."""
    res = SuiteResult("branching")
    count = 0
    for p in primes:
        for n in range(2, n_max + 1):
            for lam in enumerate_p_regular(n, p):
                D = irreducible(lam, p)
                if D.dim > dim_cap:
                    continue
                count += 1
                eps = [epsilon(lam, i, p) for i in range(p)]
                e = end_dim(restrict(D, point_stabilizer(n)))
                res.check(e == sum(eps), f"p={p} {lam}: End dim {e}, sum eps {sum(eps)}")
                blocks = block_decomposition(D)
                res.check(sum(blocks.dims().values()) == D.dim, f"p={p} {lam}: block dims")
                cont = residue_content(lam, p)
                for i, U, E in blocks.components:
                    res.check((U.dim > 0) == (eps[i] > 0), f"p={p} {lam}: e_{i} D nonzero iff eps_{i} > 0")
                    if E is None:
                        continue
                    want = tuple(x - y for x, y in zip(cont, gamma(i, p)))
                    fac = composition_factors(E)
                    res.check(all(residue_content(mu, p) == want for mu in fac),
                              f"p={p} {lam}: e_{i} D has a factor outside the content {want}")
                    res.check(fac.get(e_tilde(lam, i, p), 0) == eps[i],
                              f"p={p} {lam}: [e_{i} D : D^(e~ lam)] != eps_{i}")
    res.info["modules"] = count
    return res


# ---------------------------------------------------------------- incidence ranks

def wilson(n_range=(6, 14), primes=(2, 3), l_max: int = 3) -> SuiteResult:
    res = SuiteResult("wilson")
    for p in primes:
        for n in range(n_range[0], n_range[1] + 1):
            for l in range(l_max + 1):
                for k in range(l + 1):
                    r, w = eta(k, l, n, p).rank(), wilson_rank(k, l, n, p)
                    res.check(r == w, f"p={p} n={n} k={k} l={l}: rank {r}, formula {w}")
    return res


# ---------------------------------------------------------------- x_2 and x_3

def _unit(d: int, idx) -> np.ndarray:
    v = np.zeros(d, dtype=np.int64)
    for i in idx:
        v[i] += 1
    return v


def x_elements(n_zero_max: int = 10, n_x3_max: int = 9) -> SuiteResult:
    res = SuiteResult("x-elements")
    # x_2 on e_1 + e_2 inside S^(4,1) <= M_1, p = 2
    M = subset_module(5, 1, 2)
    got = act(x_element(2, 5, 2), M) @ _unit(5, [0, 1]) % 2
    want = _unit(5, [2, 3])
    res.info["x2(e1+e2)"] = " + ".join(f"e{i + 1}" for i in np.flatnonzero(got)) or "0"
    res.check(np.array_equal(got, want), f"x2(e1+e2) = {res.info['x2(e1+e2)']}, expected e3 + e4")

    # x_3 on v_1 ^ v_2 in the exterior square of D^(5,1), p = 3
    V = difference_module(6, 3)
    L2 = exterior_square(V)
    d = V.dim
    v = [_unit(d, [r]) for r in range(d)]
    got = act(x_element(3, 6, 3), L2) @ wedge_vector(v[0], v[1], 3) % 3
    want = (wedge_vector(v[0], v[3], 3) - wedge_vector(v[1], v[3], 3)) % 3
    terms = []
    for (i, j), pos in sorted(wedge_index(d).items(), key=lambda t: t[1]):
        if got[pos]:
            sign = "-" if got[pos] == 2 else "+"
            terms.append(f"{sign} v{i + 1}^v{j + 1}")
    res.info["x3(v1^v2)"] = " ".join(terms).lstrip("+ ") or "0"
    res.check(np.array_equal(got, want), "x3(v1^v2) != v1^v4 - v2^v4")
    res.check(is_isomorphic(L2, irreducible((4, 1, 1), 3)), "exterior square of D^(5,1) is not D^(4,1,1)")

    for n in range(4, n_zero_max + 1):
        x2 = x_element(2, n, 2)
        special = {Partition.of(n), special_partition("beta", n)}
        for lam in enumerate_p_regular(n, 2):
            zero = not act(x2, irreducible(lam, 2)).any()
            res.check(zero == (lam in special), f"n={n} {lam}: x2 D zero = {zero}")
    for n in range(6, n_x3_max + 1):
        x3 = x_element(3, n, 2)
        for lam in enumerate_p_regular(n, 2):
            if lam.h >= 3:
                res.check(bool(act(x3, irreducible(lam, 2)).any()), f"n={n} {lam}: x3 D = 0")
    return res


# ---------------------------------------------------------------- permutation modules M_k

def _exact(*vals) -> dict:
    return {j: (v, v) for j, v in enumerate(vals)}


def expected_hom(n: int, p: int, k: int) -> Optional[dict]:
    """j -> (lo, hi) bounds for dim Hom(D_j, M_k) = dim Hom(M_k, D_j); None when no statement applies."""
    at_least = (1, None)
    if p == 2 and n % 2 == 1 and n >= 7:
        if k == 1:
            return _exact(1, 1)
        if n % 4 == 1:
            return _exact(1, 1, 0) if k == 2 else _exact(1, 1, 0, 1)
        return _exact(1, 1, 1) if k == 2 else _exact(1, 1, 1, 0)
    if p == 2 and n % 2 == 0 and n >= 6:
        if k == 1:
            return _exact(1, 0)
        if n % 4 == 2:
            if k == 2:
                return _exact(1, 1, 0)
            return _exact(1, 0, 0, 0) if n >= 8 else None
        if k == 2:
            return {0: (1, 1), 1: at_least}
        return _exact(1, 0, 1, 0)
    if p == 3 and n >= 6:
        r = n % 3
        if r == 0:
            table = {1: _exact(1, 0), 2: _exact(1, 0, 1)}
        elif r == 1 and n >= 7:
            table = {1: _exact(1, 1), 2: _exact(1, 1, 0)}
        elif r == 2 and n >= 8:
            table = {1: _exact(1, 1), 2: _exact(1, 1, 0),
                     3: _exact(1, 1, 0, 0) if n % 9 == 2 else _exact(1, 1, 0, 1)}
        else:
            return None
        if k == 3 and r != 2:
            return {0: at_least, 1: at_least, 2: at_least}
        return table[k]
    return None


def expected_factors(n: int, p: int, k: int) -> Optional[Counter]:
    """Composition-factor multiplicities of M_k, keyed by the two-row label (n-j, j)."""
    t = None
    if p == 2 and n % 2 == 1:
        t = {1: {0: 1, 1: 1},
             2: {0: 2, 1: 1, 2: 1} if n % 4 == 1 else {0: 1, 1: 1, 2: 1},
             3: {0: 2, 1: 1, 2: 1, 3: 1} if n % 4 == 1 else {0: 1, 1: 2, 2: 1, 3: 1}}[k]
    elif p == 2:
        if k == 1:
            t = {0: 2, 1: 1}
        elif k == 2:
            t = {0: 3, 1: 2, 2: 1} if n % 4 == 2 else {0: 2, 1: 2, 2: 1}
        elif n >= 8:
            t = {0: 4, 1: 2, 2: 2, 3: 1} if n % 4 == 2 else {0: 2, 1: 3, 2: 2, 3: 1}
    elif p == 3:
        r = n % 3
        if r == 2:
            t = {1: {0: 1, 1: 1}, 2: {0: 1, 1: 2, 2: 1},
                 3: {0: 2, 1: 2, 2: 1, 3: 1} if n % 9 == 2 else {0: 1, 1: 2, 2: 1, 3: 1}}[k]
        elif k == 1:
            t = {0: 2, 1: 1} if r == 0 else {0: 1, 1: 1}
        elif k == 2:
            t = {0: 2, 1: 1, 2: 1}
        else:
            out = Counter({two_row_label(n, 0): 2, two_row_label(n, 1): 1, two_row_label(n, 2): 1})
            out.update(predicted_specht_factors(n, 3, p))
            return out
    if t is None:
        return None
    return Counter({two_row_label(n, j): m for j, m in t.items()})


def _within(val: int, bounds) -> bool:
    lo, hi = bounds
    return val >= lo and (hi is None or val <= hi)


def signatures(n_range=(6, 12), primes=(2, 3), k_max: int = 3) -> SuiteResult:
    res = SuiteResult("signatures")
    for p in primes:
        for n in range(n_range[0], n_range[1] + 1):
            for k in range(1, k_max + 1):
                sig = perm_module_signature(n, p, k)
                got = Counter({parse_partition(lab): m for lab, m in sig["factors"]})
                tag = f"p={p} n={n} M{k}"
                res.check(got == predicted_perm_factors(n, k, p), f"{tag}: factors differ from the two-row rule")
                want = expected_factors(n, p, k)
                if want is not None:
                    res.check(got == want, f"{tag}: factors {dict(got)}")
                hom = expected_hom(n, p, k)
                if hom is not None:
                    for j, b in hom.items():
                        res.check(_within(sig["hom_in"][j], b) and _within(sig["hom_out"][j], b),
                                  f"{tag}: Hom with D_{j} is {sig['hom_in'][j]}/{sig['hom_out'][j]}, expected {b}")
                S = specht((n - k, k), p)
                sf = composition_factors(S, candidates=dominating_regular((n - k, k), p))
                res.check(sf == predicted_specht_factors(n, k, p), f"p={p} n={n} S_{k}: two-row rule")
    return res


# ---------------------------------------------------------------- invariants of the dual natural module

def _cyclic(n: int):
    return group([Permutation.from_cycles(n, [tuple(range(1, n + 1))])], n, name=f"C{n}")


def _dihedral(n: int):
    refl = [(i, n + 1 - i) for i in range(1, n // 2 + 1) if i != n + 1 - i]
    return group([Permutation.from_cycles(n, [tuple(range(1, n + 1))]),
                  Permutation.from_cycles(n, refl)], n, name=f"D{2 * n}")


def invariants(pairs=((3, 2), (2, 3), (5, 2), (3, 3), (2, 5)), primes=(2, 3)) -> SuiteResult:
    res = SuiteResult("invariants")
    for p in primes:
        for a, b in pairs:
            n = a * b
            V = dual_specht((n - 1, 1), p)
            d = fixed_points(restrict(V, wreath(a, b))).dim
            res.check(d == int(p == 2 and b == 2), f"p={p} wreath:{a}:{b}: invariants dim {d}")
    sampled = []
    for n in range(4, 11):
        gs = [_cyclic(n), _dihedral(n), alternating(n), symmetric(n)]
        gs += [wreath(a, n // a) for a in range(2, n) if n % a == 0 and n // a >= 2]
        for name in ("agl1_5", "pgl2_5", "psl2_9", "m10", "pgl2_9"):
            G = named_group(name)
            if G.n == n:
                gs.append(G)
        for p in (2, 3, 5):
            if n % p == 0:
                continue
            V = dual_specht((n - 1, 1), p)
            for G in gs:
                sampled.append(f"{G.name or 'G'}@{n},p={p}")
                res.check(fixed_points(restrict(V, G)).dim == 0, f"p={p} {G.name}: nonzero invariants")
    res.info["transitive_groups"] = len(sampled)
    return res


# ---------------------------------------------------------------- classification

def soundness(cases=((2, 8), (2, 10), (3, 8), (3, 9)), families=FAMILIES,
              progress: Optional[Callable] = None) -> SuiteResult:
    res = SuiteResult("soundness")
    for p, n in cases:
        rep = survey(n, p, families, timing=False, progress=progress)
        errors = 0
        for cell in rep["cells"]:
            if "error" in cell:
                errors += 1
                continue
            bad = [k for k, v in cell["checks"].items() if not v]
            res.check(not bad, f"p={p} n={n} {cell['lambda']} on {cell['group']}: {bad}")
        res.info[f"p={p},n={n}"] = {"cells": len(rep["cells"]), "errors": errors}
    return res


def tnat(n: int = 6) -> SuiteResult:
    res = SuiteResult("tnat")
    alpha = special_partition("alpha", n)
    verdicts = Counter()
    for H in all_subgroups(wreath(n // 2, 2)):
        G = describe(H)
        ok, _ = theorem_TNat_decide(n, G)
        gt = ground_truth(alpha, 2, G)
        verdicts[gt] += 1
        res.check(ok == (gt == "AbsIrr"), f"subgroup of order {H.order}: decide {ok}, ground truth {gt}")
    res.info["subgroups"] = sum(verdicts.values())
    res.info["ground_truth"] = dict(verdicts)
    return res


SUITES = {
    "crystal": crystal,
    "mullineux": mullineux_suite,
    "dims": dims,
    "branching": branching,
    "wilson": wilson,
    "x-elements": x_elements,
    "signatures": signatures,
    "invariants": invariants,
    "soundness": soundness,
    "tnat": tnat,
}


def run_suite(name: str, **kw) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    t0 = time.perf_counter()
    res = SUITES[name](**kw)
    res.elapsed_s = time.perf_counter() - t0
    return res
