"""Exact dense linear algebra over the prime field GF(p).

Matrices are numpy int64 arrays with entries in [0, p).  Vectors are 1-d
arrays; subspaces are stored by a reduced row echelon basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "as_mat", "matmul", "matpow", "rref", "rank", "nullspace", "left_nullspace",
    "solve", "inverse", "kron", "identity", "is_zero",
    "Subspace", "EchelonBasis", "generalized_eigenspace", "charpoly",
]

_FLOAT_EXACT = 2 ** 53


def as_mat(m, p: int) -> np.ndarray:
    """Copy of ``m`` as an int64 array reduced into [0, p)."""
    a = np.array(m, dtype=np.int64)
    return np.mod(a, p)


def identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.int64)


def is_zero(m: np.ndarray) -> bool:
    return not np.any(m)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product a @ b mod p."""
    k = a.shape[-1]
    if k == 0:
        return np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    if (p - 1) ** 2 * k < _FLOAT_EXACT:
        c = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
        return np.mod(c, p).astype(np.int64)
    if (p - 1) ** 2 < 2 ** 62 // max(k, 1):
        return np.mod(np.asarray(a) @ np.asarray(b), p)
    c = np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)
    return np.mod(c, p).astype(np.int64)


def matpow(m: np.ndarray, e: int, p: int) -> np.ndarray:
    result = identity(m.shape[0])
    base = m
    while e:
        if e & 1:
            result = matmul(result, base, p)
        e >>= 1
        if e:
            base = matmul(base, base, p)
    return result


def _inv_mod(a: int, p: int) -> int:
    return pow(int(a), p - 2, p) if p > 2 else 1


def _eliminate(a: np.ndarray, p: int, ncols: int | None = None):
    """In-place Gauss-Jordan on ``a`` (int64, reduced). Pivots searched in the
    first ``ncols`` columns only; returns the pivot column list."""
    rows, cols = a.shape
    if ncols is None:
        ncols = cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        col = a[r:, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        if p == 2:
            piv_row = a[r, c:]
            hits = np.flatnonzero(a[:, c])
            hits = hits[hits != r]
            if hits.size:
                a[np.ix_(hits, np.arange(c, cols))] ^= piv_row
        else:
            inv = _inv_mod(a[r, c], p)
            if inv != 1:
                a[r, c:] = (a[r, c:] * inv) % p
            piv_row = a[r, c:]
            hits = np.flatnonzero(a[:, c])
            hits = hits[hits != r]
            if hits.size:
                f = a[hits, c][:, None]
                a[np.ix_(hits, np.arange(c, cols))] = (a[hits, c:] - f * piv_row) % p
        pivots.append(c)
        r += 1
    return pivots


def rref(m, p: int):
    """Reduced row echelon form: returns (R, rank, pivots)."""
    a = as_mat(m, p)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    pivots = _eliminate(a, p)
    return a, len(pivots), pivots


def rank(m, p: int) -> int:
    return rref(m, p)[1]


def nullspace(m, p: int) -> "Subspace":
    """Right kernel {v : m v = 0}."""
    a = as_mat(m, p)
    cols = a.shape[1]
    r, rk, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-r[i, f]) % p
    return Subspace.from_rows(basis, p, cols)


def left_nullspace(m, p: int) -> "Subspace":
    """{w : w m = 0}."""
    return nullspace(np.asarray(m).T, p)


def solve(a, b, p: int):
    """Some x with a x = b, or None when inconsistent."""
    a = as_mat(a, p)
    b = as_mat(b, p)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    if a.shape[0] != b.shape[0]:
        raise ValueError("dimension mismatch in solve")
    n = a.shape[1]
    aug = np.concatenate([a, b], axis=1)
    piv = _eliminate(aug, p, ncols=n)
    rk = len(piv)
    if np.any(aug[rk:, n:]):
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = aug[i, n:]
    return x[:, 0] if vec else x


def inverse(m, p: int) -> np.ndarray:
    a = as_mat(m, p)
    d = a.shape[0]
    if a.shape != (d, d):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([a, identity(d)], axis=1)
    piv = _eliminate(aug, p, ncols=d)
    if len(piv) != d:
        raise ZeroDivisionError("singular matrix")
    return aug[:, d:].copy()


def kron(a, b, p: int) -> np.ndarray:
    return np.mod(np.kron(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)), p)


@dataclass(frozen=True)
class Subspace:
    """Subspace of GF(p)^ambient with an RREF basis (rows)."""
    basis: np.ndarray
    p: int
    ambient: int
    pivots: tuple = field(default=())

    @classmethod
    def from_rows(cls, rows, p: int, ambient: int | None = None) -> "Subspace":
        a = np.asarray(rows, dtype=np.int64)
        if ambient is None:
            ambient = a.shape[1]
        a = a.reshape(-1, ambient) if a.size else np.zeros((0, ambient), dtype=np.int64)
        r, rk, piv = rref(a, p)
        basis = r[:rk].copy()
        basis.setflags(write=False)
        return cls(basis, p, ambient, tuple(piv))

    @classmethod
    def zero(cls, ambient: int, p: int) -> "Subspace":
        return cls.from_rows(np.zeros((0, ambient), dtype=np.int64), p, ambient)

    @classmethod
    def full(cls, ambient: int, p: int) -> "Subspace":
        return cls.from_rows(identity(ambient), p, ambient)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient or self.p != other.p:
            raise ValueError("ambient mismatch")

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Residue of vectors (rows) modulo the subspace."""
        v = np.mod(np.asarray(v, dtype=np.int64), self.p)
        if self.dim == 0:
            return v
        coeff = v[..., list(self.pivots)]
        return np.mod(v - matmul(coeff, self.basis, self.p), self.p)

    def coords(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of v (assumed inside) with respect to the basis rows."""
        return np.mod(np.asarray(v, dtype=np.int64)[..., list(self.pivots)], self.p)

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        self._check(other)
        return other.dim == 0 or not np.any(self.reduce(other.basis))

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.from_rows(np.concatenate([self.basis, other.basis]), self.p, self.ambient)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient, self.p)
        # x = a U = b V  <=>  [U; -V]^T-combination vanishes
        stacked = np.concatenate([self.basis, np.mod(-other.basis, self.p)])
        ker = left_nullspace(stacked, self.p)
        vecs = matmul(ker.basis[:, : self.dim], self.basis, self.p)
        return Subspace.from_rows(vecs, self.p, self.ambient)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient == other.ambient and self.p == other.p
                and self.basis.shape == other.basis.shape
                and bool(np.array_equal(self.basis, other.basis)))

    def __hash__(self):
        return hash((self.ambient, self.p, self.basis.tobytes()))

    def complement_coords(self) -> list[int]:
        """Non-pivot coordinates; the unit vectors there span a complement."""
        piv = set(self.pivots)
        return [c for c in range(self.ambient) if c not in piv]


class EchelonBasis:
    """Growing RREF basis with optional payload columns carried along.

    Rows have ``width`` leading coordinates (the vector) followed by
    payload columns that are transformed by the same row operations.
    """

    def __init__(self, width: int, p: int, payload: int = 0):
        self.width = width
        self.p = p
        self.payload = payload
        self.rows = np.zeros((0, width + payload), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, x: np.ndarray) -> np.ndarray:
        x = np.mod(np.asarray(x, dtype=np.int64), self.p)
        if not self.pivots:
            return x
        coeff = x[:, self.pivots]
        return np.mod(x - matmul(coeff, self.rows, self.p), self.p)

    def add(self, x: np.ndarray):
        """Add rows; return (new echelon rows, payload of rows that reduced to 0)."""
        x = np.atleast_2d(x)
        res = self.reduce(x)
        nz = np.any(res[:, : self.width], axis=1)
        dependent = res[~nz, self.width:]
        res = res[nz]
        if res.shape[0] == 0:
            return res, dependent
        piv = _eliminate(res, self.p, ncols=self.width)
        rk = len(piv)
        new = res[:rk]
        # rows of ``res`` beyond the rank had zero vector part after elimination
        extra = res[rk:, self.width:]
        if extra.shape[0]:
            dependent = np.concatenate([dependent, extra])
        if self.pivots:
            coeff = self.rows[:, piv]
            self.rows = np.mod(self.rows - matmul(coeff, new, self.p), self.p)
        allrows = np.concatenate([self.rows, new])
        allpiv = self.pivots + piv
        order = np.argsort(allpiv, kind="stable")
        self.rows = allrows[order]
        self.pivots = [allpiv[i] for i in order]
        return new, dependent

    def transform_payload(self, m: np.ndarray):
        """Right-multiply payload columns by ``m`` (payload x payload')."""
        vec = self.rows[:, : self.width]
        pay = matmul(self.rows[:, self.width:], m, self.p)
        self.payload = m.shape[1]
        self.rows = np.concatenate([vec, pay], axis=1)

    def subspace(self) -> Subspace:
        b = self.rows[:, : self.width].copy()
        b.setflags(write=False)
        return Subspace(b, self.p, self.width, tuple(self.pivots))


def generalized_eigenspace(m, c: int, p: int) -> Subspace:
    """ker((m - cI)^d) for square m of size d."""
    a = as_mat(m, p)
    d = a.shape[0]
    if a.shape != (d, d):
        raise ValueError("generalized_eigenspace expects a square matrix")
    b = np.mod(a - (c % p) * identity(d), p)
    k = nullspace(b, p).dim
    power = b
    # kernels of b^(2^j) grow until they stabilise; 2^j >= d suffices
    e = 1
    while e < d:
        nxt = matmul(power, power, p)
        knext = nullspace(nxt, p).dim
        power = nxt
        e *= 2
        if knext == k:
            break
        k = knext
    return nullspace(power, p)


def charpoly(m, p: int) -> np.ndarray:
    """Characteristic polynomial det(xI - m), coefficients low degree first."""
    h = as_mat(m, p)
    n = h.shape[0]
    for c in range(n - 2):
        col = h[c + 1:, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        i = c + 1 + int(nz[0])
        if i != c + 1:
            h[[i, c + 1]] = h[[c + 1, i]]
            h[:, [i, c + 1]] = h[:, [c + 1, i]]
        inv = _inv_mod(h[c + 1, c], p)
        u = (h[c + 2:, c] * inv) % p
        if not np.any(u):
            continue
        h[c + 2:, :] = (h[c + 2:, :] - u[:, None] * h[c + 1, :][None, :]) % p
        h[:, c + 1] = (h[:, c + 1] + matmul(h[:, c + 2:], u, p)) % p
    # recurrence on leading principal minors of the Hessenberg matrix
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1:] = prev[:-1]
        cur = (cur - h[k - 1, k - 1] * prev) % p
        t = 1
        acc = np.zeros(n + 1, dtype=np.int64)
        coeffs = np.zeros(k - 1, dtype=np.int64)
        for i in range(k - 1, 0, -1):
            t = (t * h[i, i - 1]) % p
            if t == 0:
                break
            coeffs[i - 1] = (h[i - 1, k - 1] * t) % p
        if np.any(coeffs):
            acc = matmul(coeffs[None, :], polys[: k - 1], p)[0]
        polys[k] = (cur - acc) % p
    return polys[n].copy()
