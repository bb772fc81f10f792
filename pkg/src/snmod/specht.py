"""Permutation modules M^mu, Specht modules S^lambda and the irreducibles D^lambda."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from math import factorial
from typing import Optional, Sequence

import numpy as np
from scipy import sparse

from . import cache as disk_cache
from .config import get_config
from .fp_linalg import inverse, matmul, rref
from .partitions import Partition, PartitionError, _as_partition, is_p_regular
from .perm_groups import symmetric
from .reps import CapError, Rep, dual

__all__ = [
    "standard_tableaux", "perm_module", "subset_module", "SpechtData", "specht_data", "specht",
    "gram", "irreducible", "irreducible_data", "hook_dim", "clear_memo",
]


def standard_tableaux(lam) -> list:
    """Standard tableaux as row words: w[x-1] is the (0-based) row of entry x, in lex order."""
    lam = _as_partition(lam)
    parts = list(lam.parts)
    n = lam.n
    out = []
    lens = [0] * len(parts)
    word = []

    def rec():
        if len(word) == n:
            out.append(tuple(word))
            return
        for r in range(len(parts)):
            if lens[r] < parts[r] and (r == 0 or lens[r - 1] > lens[r]):
                lens[r] += 1
                word.append(r)
                rec()
                word.pop()
                lens[r] -= 1

    rec()
    return out


def hook_dim(lam) -> int:
    lam = _as_partition(lam)
    conj = lam.conjugate()
    h = 1
    for r, s in lam.nodes():
        h *= lam[r] - s + conj[s] - r + 1
    return factorial(lam.n) // h


# ---------------------------------------------------------------- permutation modules

def _tabloids(n: int, mu: Sequence[int]) -> list:
    """Row words of mu-tabloids ordered by (row-2 set, row-3 set, ...) lexicographically."""
    mu = list(mu)
    out = []

    def rec(row, remaining, word):
        if row == len(mu):
            out.append(tuple(word))
            return
        if row == 0:
            rec(1, remaining, word)
            return
        for chosen in combinations(sorted(remaining), mu[row]):
            w = list(word)
            for x in chosen:
                w[x] = row
            rec(row + 1, remaining - set(chosen), w)

    rec(0, set(range(n)), [0] * n)
    return out


def perm_module(n: int, p: int, mu: Sequence[int]) -> Rep:
    """M^mu: the permutation module on mu-tabloids (mu a composition of n)."""
    mu = [int(x) for x in mu]
    if any(x < 0 for x in mu) or sum(mu) != n:
        raise PartitionError(f"{mu} is not a composition of {n}")
    words = _tabloids(n, mu)
    index = {w: k for k, w in enumerate(words)}
    d = len(words)
    mats = []
    for i in range(1, n):
        img = np.empty(d, dtype=np.int64)
        for k, w in enumerate(words):
            v = list(w)
            v[i - 1], v[i] = v[i], v[i - 1]
            img[k] = index[tuple(v)]
        P = np.zeros((d, d), dtype=np.int64)
        P[img, np.arange(d)] = 1
        mats.append(P)
    label = "M^(" + ",".join(map(str, mu)) + ")"
    return Rep(symmetric(n), tuple(mats), p, label=label, note="tabloids", dimension=d)


def subset_module(n: int, k: int, p: int) -> Rep:
    """M_k: the permutation module on k-subsets of {1..n}, basis in combinations order."""
    if not 0 <= k <= n:
        raise PartitionError(f"k = {k} out of range for n = {n}")
    V = perm_module(n, p, [n - k, k])
    V.label = f"M{k}"
    V.note = "k-subsets"
    return V


def subsets(n: int, k: int) -> list:
    return [tuple(x + 1 for x in c) for c in combinations(range(n), k)]


# ---------------------------------------------------------------- Specht modules

@dataclass
class SpechtData:
    lam: Partition
    p: int
    tableaux: list          # standard tableaux (row words)
    tab_keys: np.ndarray    # sorted tabloid keys occurring in some polytabloid
    A: sparse.csr_matrix    # coefficient of tabloid (column) in e_t (row), integers
    base: int

    @property
    def dim(self) -> int:
        return len(self.tableaux)

    def key(self, word) -> int:
        return int(sum(int(r) * self.base ** x for x, r in enumerate(word)))

    def columns_for(self, words) -> np.ndarray:
        """Column index of each tabloid word in ``tab_keys`` (-1 if absent)."""
        keys = np.array([self.key(w) for w in words], dtype=np.int64)
        pos = np.searchsorted(self.tab_keys, keys)
        pos = np.minimum(pos, len(self.tab_keys) - 1)
        return np.where(self.tab_keys[pos] == keys, pos, -1)

    @cached_property
    def std_cols(self) -> np.ndarray:
        return self.columns_for(self.tableaux)

    @cached_property
    def E_inv(self) -> np.ndarray:
        E = self.A[:, self.std_cols].toarray() % self.p
        return inverse(E, self.p)

    def coords_from_tabloid_rows(self, X: np.ndarray) -> np.ndarray:
        """Standard-polytabloid coordinates of vectors given on the standard tabloids."""
        return matmul(np.asarray(X) % self.p, self.E_inv, self.p)

    def generator(self, i: int) -> np.ndarray:
        """Matrix of s_i = (i, i+1) on the standard polytabloid basis."""
        swapped = []
        for w in self.tableaux:
            v = list(w)
            v[i - 1], v[i] = v[i], v[i - 1]
            swapped.append(v)
        cols = self.columns_for(swapped)
        X = np.zeros((self.dim, self.dim), dtype=np.int64)
        ok = cols >= 0
        if ok.any():
            X[:, ok] = self.A[:, cols[ok]].toarray()
        C = self.coords_from_tabloid_rows(X)
        return np.ascontiguousarray(C.T)

    def gram(self) -> np.ndarray:
        G = (self.A @ self.A.T).toarray()
        return np.mod(G, self.p).astype(np.int64)

    def polytabloid_rows(self) -> np.ndarray:
        """Dense e_t over the occurring tabloids (rows), reduced mod p."""
        return np.mod(self.A.toarray(), self.p)


def _column_terms(lam: Partition):
    """For each signed column permutation: the new row of every diagram position."""
    positions = list(lam.nodes())
    conj = lam.conjugate()
    per_col = []
    for c in range(1, (lam[1] if lam.h else 0) + 1):
        m = conj[c]
        opts = []
        for perm in permutations(range(m)):
            inv = sum(1 for a in range(m) for b in range(a + 1, m) if perm[a] > perm[b])
            opts.append((perm, -1 if inv % 2 else 1))
        per_col.append(opts)
    pos_index = {nd: k for k, nd in enumerate(positions)}
    terms = [(np.zeros(len(positions), dtype=np.int64), 1)]
    for c, opts in enumerate(per_col, start=1):
        nxt = []
        for rows, sgn in terms:
            for perm, s in opts:
                r2 = rows.copy()
                # entry at (r, c) moves to row perm[r-1]
                for r in range(1, len(perm) + 1):
                    r2[pos_index[(r, c)]] = perm[r - 1]
                nxt.append((r2, sgn * s))
        terms = nxt
    NR = np.array([t[0] for t in terms], dtype=np.int64)
    signs = np.array([t[1] for t in terms], dtype=np.int64)
    return positions, NR, signs


_memo: dict = {}
_memo_lock = threading.Lock()


def clear_memo():
    with _memo_lock:
        _memo.clear()


def _memoised(key, build):
    with _memo_lock:
        if key in _memo:
            return _memo[key]
    value = build()
    with _memo_lock:
        return _memo.setdefault(key, value)


def specht_data(lam, p: int) -> SpechtData:
    lam = _as_partition(lam)
    return _memoised(("specht-data", lam, p), lambda: _build_specht_data(lam, p))


def _build_specht_data(lam: Partition, p: int) -> SpechtData:
    n = lam.n
    tabs = standard_tableaux(lam)
    base = max(lam.h, 2)
    if base ** n >= 2 ** 62:
        raise PartitionError(f"{lam} is too large for tabloid keys")
    positions, NR, signs = _column_terms(lam)
    # W[pos, t] = base ** (entry of tableau t at pos)
    counters = [0] * (lam.h + 1)
    entries = np.zeros((len(positions), len(tabs)), dtype=np.int64)
    pos_index = {nd: k for k, nd in enumerate(positions)}
    for t, w in enumerate(tabs):
        counters = [0] * (lam.h + 1)
        for x, r in enumerate(w):
            counters[r] += 1
            entries[pos_index[(r + 1, counters[r])], t] = x
    Wt = base ** entries
    keys = NR @ Wt                                     # terms x tableaux
    uniq, inv = np.unique(keys.T.ravel(), return_inverse=True)
    rows = np.repeat(np.arange(len(tabs)), NR.shape[0])
    data = np.tile(signs, len(tabs))
    A = sparse.csr_matrix((data, (rows, inv.ravel())), shape=(len(tabs), len(uniq)), dtype=np.int64)
    return SpechtData(lam, p, tabs, uniq.astype(np.int64), A, base)


def _check_cap(lam: Partition):
    cap = get_config().dim_cap
    if hook_dim(lam) > cap:
        raise CapError(f"S^{lam} has dimension {hook_dim(lam)} > cap {cap}")


def specht(lam, p: int) -> Rep:
    """S^lambda in the standard polytabloid basis."""
    lam = _as_partition(lam)
    _check_cap(lam)

    def build():
        n = lam.n
        cached = disk_cache.load("S", n, p, lam)
        if cached is None:
            data = specht_data(lam, p)
            mats = tuple(data.generator(i) for i in range(1, n))
            disk_cache.store("S", n, p, lam, mats)
        else:
            mats = cached
        return Rep(symmetric(n), mats, p, label=f"S{lam}", note="standard polytabloids",
                   dimension=len(standard_tableaux(lam)))

    return _memoised(("specht", lam, p), build)


def gram(lam, p: int) -> np.ndarray:
    return specht_data(lam, p).gram()


@dataclass
class IrreducibleData:
    rep: Rep
    R: np.ndarray      # quotient map S^lambda -> D^lambda (rank x dim S)
    pivots: list


def irreducible_data(lam, p: int) -> IrreducibleData:
    lam = _as_partition(lam)
    if not is_p_regular(lam, p):
        raise PartitionError(f"{lam} is not {p}-regular")
    _check_cap(lam)

    def build():
        S = specht(lam, p)
        G = gram(lam, p)
        R, rk, piv = rref(G, p)
        R = R[:rk].copy()
        cached = disk_cache.load("D", lam.n, p, lam)
        if cached is None:
            mats = tuple(matmul(R, m, p)[:, piv] for m in S.mats)
            disk_cache.store("D", lam.n, p, lam, mats)
        else:
            mats = cached
        rep = Rep(S.group, mats, p, label=f"D{lam}", note="quotient of Specht by radical", dimension=rk)
        return IrreducibleData(rep, R, list(piv))

    return _memoised(("irreducible", lam, p), build)


def irreducible(lam, p: int) -> Rep:
    """D^lambda = S^lambda / rad for p-regular lambda."""
    return irreducible_data(lam, p).rep


def dual_specht(lam, p: int) -> Rep:
    V = dual(specht(lam, p))
    V.label = f"S{_as_partition(lam)}^*"
    return V
