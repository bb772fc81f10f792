"""Univariate polynomials over GF(p), coefficient arrays low degree first."""
from __future__ import annotations

import numpy as np

from .fp_linalg import identity, matmul

__all__ = ["trim", "degree", "pmul", "pdivmod", "pmod", "pgcd", "monic", "ppowmod",
           "eval_at_matrix", "low_degree_factors"]


def trim(f) -> np.ndarray:
    f = np.asarray(f, dtype=np.int64)
    nz = np.flatnonzero(f)
    if nz.size == 0:
        return np.zeros(1, dtype=np.int64)
    return f[: nz[-1] + 1].copy()


def degree(f) -> int:
    f = trim(f)
    return -1 if f.size == 1 and f[0] == 0 else f.size - 1


def monic(f, p: int) -> np.ndarray:
    f = trim(f) % p
    lead = int(f[-1])
    if lead == 0:
        return f
    return (f * pow(lead, p - 2, p)) % p


def pmul(f, g, p: int) -> np.ndarray:
    f, g = trim(f), trim(g)
    if (p - 1) ** 2 * min(f.size, g.size) < 2 ** 53:
        c = np.convolve(f.astype(np.float64), g.astype(np.float64))
        return trim(np.mod(c, p).astype(np.int64))
    return trim(np.mod(np.convolve(f.astype(object), g.astype(object)), p).astype(np.int64))


def pdivmod(f, g, p: int):
    f = trim(f) % p
    g = trim(g) % p
    dg = degree(g)
    if dg < 0:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(int(g[-1]), p - 2, p)
    r = f.copy()
    if degree(r) < dg:
        return np.zeros(1, dtype=np.int64), r
    q = np.zeros(r.size - dg, dtype=np.int64)
    for k in range(r.size - 1, dg - 1, -1):
        c = (int(r[k]) * inv) % p
        if c:
            q[k - dg] = c
            r[k - dg: k + 1] = (r[k - dg: k + 1] - c * g) % p
    return trim(q), trim(r[:dg] if dg > 0 else np.zeros(1, dtype=np.int64))


def pmod(f, g, p: int) -> np.ndarray:
    return pdivmod(f, g, p)[1]


def pgcd(f, g, p: int) -> np.ndarray:
    a, b = trim(f) % p, trim(g) % p
    while degree(b) >= 0:
        a, b = b, pmod(a, b, p)
    return monic(a, p)


def ppowmod(f, e: int, m, p: int) -> np.ndarray:
    result = np.ones(1, dtype=np.int64)
    base = pmod(f, m, p)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, p), m, p)
        e >>= 1
        if e:
            base = pmod(pmul(base, base, p), m, p)
    return result


def eval_at_matrix(f, a: np.ndarray, p: int) -> np.ndarray:
    """Horner evaluation f(a)."""
    f = trim(f)
    d = a.shape[0]
    out = np.zeros((d, d), dtype=np.int64)
    eye = identity(d)
    for c in f[::-1]:
        out = np.mod(matmul(out, a, p) + int(c) * eye, p)
    return out


def _psub(f, g, p):
    n = max(len(f), len(g))
    a = np.zeros(n, dtype=np.int64)
    a[: len(f)] += f
    a[: len(g)] -= g
    return trim(a % p)


def _equal_degree_split(g, k: int, p: int, rng) -> list[np.ndarray]:
    """Split a squarefree product of degree-k irreducibles into its factors."""
    g = monic(g, p)
    if degree(g) == k:
        return [g]
    while True:
        a = rng.integers(0, p, size=degree(g))
        a = trim(a)
        if degree(a) < 1:
            continue
        if p == 2:
            t = a.copy()
            acc = a.copy()
            for _ in range(k - 1):
                t = pmod(pmul(t, t, p), g, p)
                acc = _add(acc, t, p)
            h = pgcd(g, acc, p)
        else:
            h = ppowmod(a, (p ** k - 1) // 2, g, p)
            h = pgcd(g, _psub(h, np.ones(1, dtype=np.int64), p), p)
        if 0 < degree(h) < degree(g):
            q, _ = pdivmod(g, h, p)
            return _equal_degree_split(h, k, p, rng) + _equal_degree_split(q, k, p, rng)


def _add(f, g, p):
    n = max(len(f), len(g))
    a = np.zeros(n, dtype=np.int64)
    a[: len(f)] += f
    a[: len(g)] += g
    return trim(a % p)


def low_degree_factors(f, p: int, max_degree: int, rng) -> list[np.ndarray]:
    """Distinct monic irreducible factors of f of degree <= max_degree, by degree."""
    f = monic(f, p)
    out: list[np.ndarray] = []
    x = np.array([0, 1], dtype=np.int64)
    h = x.copy()
    rest = f.copy()
    for k in range(1, max_degree + 1):
        if degree(rest) < k:
            break
        h = ppowmod(h, p, rest, p)
        g = pgcd(rest, _psub(h, x, p), p)
        if degree(g) > 0:
            out.extend(sorted(_equal_degree_split(g, k, p, rng), key=lambda u: tuple(u)))
            # strip these factors completely from rest
            while degree(g) > 0:
                rest, r = pdivmod(rest, g, p)
                g = pgcd(rest, g, p)
            h = pmod(h, rest, p) if degree(rest) > 0 else h
    return out
