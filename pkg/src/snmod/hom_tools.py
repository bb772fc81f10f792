"""Incidence maps between subset modules, the elements x_2, x_3 and the map zeta_k."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import comb
from typing import Optional

import numpy as np

from .config import get_config
from .fp_linalg import matmul, rank
from .partitions import _as_partition
from .perm_groups import Permutation, symmetric
from .reps import CapError, Rep, RepError
from .specht import irreducible, subset_module

__all__ = [
    "IncidenceMap", "eta", "wilson_rank", "GroupAlgebraElement", "x_element", "x_element_from_definition",
    "act", "x_nonzero", "difference_module", "defining_tableau", "polytabloid_vector", "zeta", "zeta_nonzero_on_specht",
]


# ---------------------------------------------------------------- incidence maps

@dataclass
class IncidenceMap:
    k: int
    l: int
    n: int
    p: int
    matrix: np.ndarray      # C(n,l) x C(n,k)

    def rank(self) -> int:
        return rank(self.matrix, self.p)


def eta(k: int, l: int, n: int, p: int) -> IncidenceMap:
    """Sends a k-subset to the sum of the l-subsets contained in it or containing it."""
    if not (0 <= k <= n and 0 <= l <= n):
        raise ValueError(f"subset sizes {k}, {l} out of range for n = {n}")
    src = [frozenset(c) for c in combinations(range(n), k)]
    dst = [frozenset(c) for c in combinations(range(n), l)]
    M = np.zeros((len(dst), len(src)), dtype=np.int64)
    for j, X in enumerate(src):
        for i, Y in enumerate(dst):
            if Y <= X or X <= Y:
                M[i, j] = 1
    return IncidenceMap(k, l, n, p, M % p)


def wilson_rank(k: int, l: int, n: int, p: int) -> int:
    """Closed-form rank of eta(k, l) over GF(p)."""
    if k > l:
        k, l = l, k
    if not 0 <= k <= l <= n // 2:
        raise ValueError("needs 0 <= k <= l <= n/2")
    total = 0
    for r in range(k + 1):
        if comb(l - r, k - r) % p:
            total += comb(n, r) - (comb(n, r - 1) if r else 0)
    return total


# ---------------------------------------------------------------- group algebra

@dataclass
class GroupAlgebraElement:
    n: int
    p: int
    terms: dict = field(default_factory=dict)    # Permutation -> coefficient in 1..p-1

    @classmethod
    def from_terms(cls, n: int, p: int, pairs) -> "GroupAlgebraElement":
        out = cls(n, p)
        for g, c in pairs:
            out._add(g, c)
        return out

    def _add(self, g: Permutation, c: int):
        if g.n != self.n:
            raise ValueError(f"permutation of degree {g.n} in an element of degree {self.n}")
        v = (self.terms.get(g, 0) + c) % self.p
        if v:
            self.terms[g] = v
        else:
            self.terms.pop(g, None)

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        out = GroupAlgebraElement(self.n, self.p, dict(self.terms))
        for g, c in other.terms.items():
            out._add(g, c)
        return out

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + other.scaled(-1)

    def scaled(self, c: int) -> "GroupAlgebraElement":
        return GroupAlgebraElement.from_terms(self.n, self.p, ((g, c * x) for g, x in self.terms.items()))

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        out = GroupAlgebraElement(self.n, self.p)
        for (g, a), (h, b) in product(self.terms.items(), other.terms.items()):
            out._add(g * h, a * b)
        return out

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElement) and (self.n, self.p, self.terms) == (
            other.n, other.p, other.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for g in sorted(self.terms, key=lambda g: g.img):
            c = self.terms[g]
            parts.append(str(g) if c == 1 else f"{c}*{g}")
        return " + ".join(parts)


def _three_cycles(n: int, p: int, a: int, b: int, c: int, sign: int) -> list:
    return [(Permutation.from_cycles(n, [(a, b, c)]), sign), (Permutation.from_cycles(n, [(a, c, b)]), sign)]


def x_element(k: int, n: int, p: int) -> GroupAlgebraElement:
    """x_2 or x_3 in its collected form."""
    if k not in (2, 3):
        raise ValueError("only k = 2 and k = 3 are available")
    if n < 2 * k:
        raise ValueError(f"x_{k} needs n >= {2 * k}")
    if k == 2:
        t = lambda a, b: Permutation.transposition(n, a, b)
        return GroupAlgebraElement.from_terms(n, p, [(t(1, 2), 1), (t(1, 4), -1), (t(2, 3), -1), (t(3, 4), 1)])
    brackets = [((1, 2, 3), 1), ((2, 3, 4), -1), ((1, 3, 5), -1), ((1, 2, 6), -1),
                ((3, 4, 5), 1), ((2, 4, 6), 1), ((1, 5, 6), 1), ((4, 5, 6), -1)]
    pairs = []
    for (a, b, c), s in brackets:
        pairs += _three_cycles(n, p, a, b, c, s)
    return GroupAlgebraElement.from_terms(n, p, pairs)


def defining_tableau(k: int, n: int) -> list:
    """Rows of the (n-k, k)-tableau with first row k+1..n and second row 1..k."""
    return [list(range(k + 1, n + 1)), list(range(1, k + 1))]


def _column_group(k: int, n: int) -> list:
    """(sigma, sign) for the column stabilizer: products of (r, k+r) over subsets."""
    out = []
    for mask in product((0, 1), repeat=k):
        cyc = [(r + 1, k + r + 1) for r in range(k) if mask[r]]
        out.append((Permutation.from_cycles(n, cyc), -1 if sum(mask) % 2 else 1))
    return out


def _symmetric_on(points, n: int) -> list:
    pts = list(points)
    out = []
    for perm in permutations(pts):
        img = list(range(1, n + 1))
        for a, b in zip(pts, perm):
            img[a - 1] = b
        out.append(Permutation.from_images(img))
    return out


def x_element_from_definition(k: int, n: int, p: int) -> GroupAlgebraElement:
    """Sum over g in S_k and sigma in C_t of sgn(sigma) sigma g sigma^-1, collected."""
    if n < 2 * k:
        raise ValueError(f"x_{k} needs n >= {2 * k}")
    out = GroupAlgebraElement(n, p)
    for g in _symmetric_on(range(1, k + 1), n):
        for s, sgn in _column_group(k, n):
            out._add(s * g * s.inverse(), sgn)
    return out


def act(elt: GroupAlgebraElement, V: Rep) -> np.ndarray:
    """The matrix of sum c_g rho(g) on V."""
    if elt.n != V.n or elt.p != V.p:
        raise RepError("element and module disagree on degree or characteristic")
    out = np.zeros((V.dim, V.dim), dtype=np.int64)
    for g, c in elt.terms.items():
        out = (out + c * V.evaluate(g)) % V.p
    return out


def x_nonzero(lam, k: int, p: int) -> bool:
    lam = _as_partition(lam)
    D = irreducible(lam, p)
    return bool(act(x_element(k, lam.n, p), D).any())


def difference_module(n: int, p: int) -> Rep:
    """D^(n-1,1) on v_r = e_r - e_{r+1}; when p | n the all-ones vector is factored out
    and v_{n-1} is dropped from the basis."""
    drop = n % p == 0
    d = n - 2 if drop else n - 1
    tail = np.array([r % p for r in range(1, n - 1)], dtype=np.int64)   # v_{n-1} in the quotient

    def diff(a: int, b: int) -> np.ndarray:
        v = np.zeros(n - 1, dtype=np.int64)
        lo, hi = min(a, b), max(a, b)
        v[lo - 1:hi - 1] = 1 if a < b else -1
        if drop:
            v = v[:-1] + v[-1] * tail
        return v % p

    mats = []
    for i in range(1, n):
        s = Permutation.transposition(n, i, i + 1)
        mats.append(np.array([diff(s(r), s(r + 1)) for r in range(1, d + 1)], dtype=np.int64).T)
    return Rep(symmetric(n), tuple(mats), p, label=f"D({n - 1},1)", note="difference basis")


# ---------------------------------------------------------------- zeta_k

def polytabloid_vector(k: int, n: int, p: int) -> np.ndarray:
    """e_t in the k-subset basis of M_k (combinations order)."""
    index = {c: i for i, c in enumerate(combinations(range(1, n + 1), k))}
    v = np.zeros(len(index), dtype=np.int64)
    base = tuple(range(1, k + 1))
    for s, sgn in _column_group(k, n):
        J = tuple(sorted(s(x) for x in base))
        v[index[J]] += sgn
    return v % p


def zeta(k: int, lam, p: int, cap: Optional[int] = None) -> np.ndarray:
    """zeta_k : M_k -> End(D^lambda) as a (d*d) x C(n,k) matrix (row-major flattening)."""
    lam = _as_partition(lam)
    n = lam.n
    D = irreducible(lam, p)
    cap = get_config().dim_cap if cap is None else cap
    if D.dim * comb(n, k) > cap:
        raise CapError(f"zeta_{k} for {lam}: {D.dim} x {comb(n, k)} exceeds cap {cap}")
    cols = []
    for J in combinations(range(1, n + 1), k):
        S = sum(D.evaluate(g) for g in _symmetric_on(J, n)) % p
        cols.append(S.reshape(-1))
    return np.array(cols, dtype=np.int64).T


def zeta_is_intertwiner(Z: np.ndarray, k: int, lam, p: int) -> bool:
    """zeta(g J) = rho(g) zeta(J) rho(g)^-1 for the Coxeter generators."""
    lam = _as_partition(lam)
    D = irreducible(lam, p)
    M = subset_module(lam.n, k, p)
    d = D.dim
    for s_M, s_D in zip(M.mats, D.mats):
        left = matmul(Z, s_M, p)                         # zeta(s J)
        right = np.empty_like(Z)
        for c in range(Z.shape[1]):
            X = Z[:, c].reshape(d, d)
            right[:, c] = matmul(matmul(s_D, X, p), s_D, p).reshape(-1)   # s_i is an involution
        if not np.array_equal(left % p, right % p):
            return False
    return True


def zeta_nonzero_on_specht(k: int, lam, p: int) -> bool:
    """zeta_k(e_t) != 0; e_t generates S_k, so this decides vanishing on S_k."""
    lam = _as_partition(lam)
    Z = zeta(k, lam, p)
    return bool(matmul(Z, polytabloid_vector(k, lam.n, p).reshape(-1, 1), p).any())
