"""Matrix representations of permutation groups over GF(p) and the generic module operations."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .config import get_config
from .fp_linalg import (EchelonBasis, Subspace, identity, inverse, kron, matmul,
                        nullspace)
from .perm_groups import (GroupError, PermGroup, Permutation, adjacent_word,
                          coset_action, symmetric, young_subgroup)

__all__ = [
    "Rep", "RepError", "CapError", "HomSpace", "trivial", "sign_rep", "restrict", "induce",
    "trivial_induced", "sign_twist", "dual", "tensor", "box", "direct_sum", "exterior_square",
    "wedge_index", "wedge_vector", "sub_rep",
    "quotient_rep", "as_symmetric", "spin_up", "spin_up_many", "fixed_points", "hom_space",
    "end_dim", "is_intertwiner", "check_coxeter", "random_elements",
]


class RepError(ValueError):
    """Incompatible modules or malformed input."""


class CapError(RuntimeError):
    """A configured resource cap was exceeded."""


@dataclass(eq=False)
class Rep:
    """Images of the generators of ``group`` (column-vector convention)."""

    group: PermGroup
    mats: tuple
    p: int
    label: str = ""
    note: str = ""
    dimension: Optional[int] = None     # needed only when the group has no generators
    _slp_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.mats = tuple(np.asarray(m, dtype=np.int64) % self.p for m in self.mats)
        if len(self.mats) != len(self.group.gens):
            raise RepError("one matrix per group generator is required")
        d = self.mats[0].shape[0] if self.mats else (self.dimension or 0)
        if any(m.shape != (d, d) for m in self.mats):
            raise RepError("generator images must be square of equal size")
        self._dim = d

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def n(self) -> int:
        return self.group.n

    @property
    def is_symmetric_group_rep(self) -> bool:
        return self.group.coxeter == tuple(range(1, self.n))

    def __repr__(self):
        return f"Rep({self.label or '?'}, dim={self.dim}, p={self.p}, group={self.group.name})"

    # -------------------------------------------------------- evaluation
    def evaluate(self, g: Permutation) -> np.ndarray:
        if self.group.coxeter is not None:
            where = {i: k for k, i in enumerate(self.group.coxeter)}
            out = identity(self.dim)
            for i in adjacent_word(g):
                if i not in where:
                    raise GroupError(f"{g} is not in {self.group.name}")
                out = matmul(out, self.mats[where[i]], self.p)
            return out
        out = identity(self.dim)
        for node in self.group.factor(g):
            out = matmul(out, self._slp_value(node), self.p)
        return out

    def _slp_value(self, node: int) -> np.ndarray:
        cache = self._slp_cache
        if node in cache:
            return cache[node]
        slp = self.group.slp
        stack = [node]
        while stack:
            k = stack[-1]
            if k in cache:
                stack.pop()
                continue
            op = slp[k]
            if op[0] == "e":
                cache[k] = identity(self.dim)
            elif op[0] == "g":
                cache[k] = self.mats[op[1]]
            elif op[0] == "i":
                if op[1] not in cache:
                    stack.append(op[1])
                    continue
                cache[k] = inverse(cache[op[1]], self.p)
            else:
                missing = [x for x in op[1:] if x not in cache]
                if missing:
                    stack.extend(missing)
                    continue
                cache[k] = matmul(cache[op[1]], cache[op[2]], self.p)
            stack.pop()
        return cache[node]

    def transposed_mats(self) -> tuple:
        return tuple(np.ascontiguousarray(m.T) for m in self.mats)


@dataclass
class HomSpace:
    source: Rep
    target: Rep
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)


# ---------------------------------------------------------------- constructors

def trivial(G: PermGroup, p: int) -> Rep:
    return Rep(G, tuple(np.ones((1, 1), dtype=np.int64) for _ in G.gens), p, label="1", dimension=1)


def sign_rep(G: PermGroup, p: int) -> Rep:
    return Rep(G, tuple(np.full((1, 1), g.sign() % p, dtype=np.int64) for g in G.gens), p, label="sgn", dimension=1)


def sign_twist(V: Rep) -> Rep:
    mats = tuple((g.sign() * m) % V.p for g, m in zip(V.group.gens, V.mats))
    return Rep(V.group, mats, V.p, label=f"{V.label}*sgn" if V.label else "", dimension=V.dim)


def dual(V: Rep) -> Rep:
    mats = tuple(np.ascontiguousarray(inverse(m, V.p).T) for m in V.mats)
    return Rep(V.group, mats, V.p, label=f"{V.label}^*" if V.label else "", dimension=V.dim)


def tensor(V: Rep, W: Rep) -> Rep:
    _same_group(V, W)
    return Rep(V.group, tuple(kron(a, b, V.p) for a, b in zip(V.mats, W.mats)), V.p,
               label=f"{V.label}(x){W.label}", dimension=V.dim * W.dim)


def wedge_index(d: int) -> dict:
    """(i, j) with i < j -> position in the basis v_i ^ v_j of the exterior square."""
    return {pair: k for k, pair in enumerate((i, j) for i in range(d) for j in range(i + 1, d))}


def wedge_vector(x, y, p: int) -> np.ndarray:
    """Coordinates of x ^ y in the basis ordered as in ``wedge_index``."""
    x, y = np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)
    d = len(x)
    out = np.array([x[i] * y[j] - x[j] * y[i] for i in range(d) for j in range(i + 1, d)],
                   dtype=np.int64)
    return out % p


def exterior_square(V: Rep) -> Rep:
    d, p = V.dim, V.p
    mats = []
    for m in V.mats:
        cols = [wedge_vector(m[:, i], m[:, j], p) for i in range(d) for j in range(i + 1, d)]
        mats.append(np.array(cols, dtype=np.int64).T.reshape(len(cols), len(cols)) if cols
                    else np.zeros((0, 0), dtype=np.int64))
    return Rep(V.group, tuple(mats), p, label=f"L2({V.label})", dimension=d * (d - 1) // 2)


def direct_sum(V: Rep, W: Rep) -> Rep:
    _same_group(V, W)
    mats = []
    for a, b in zip(V.mats, W.mats):
        m = np.zeros((V.dim + W.dim,) * 2, dtype=np.int64)
        m[: V.dim, : V.dim] = a
        m[V.dim:, V.dim:] = b
        mats.append(m)
    return Rep(V.group, tuple(mats), V.p, label=f"{V.label}+{W.label}",
               dimension=V.dim + W.dim)


def box(V: Rep, W: Rep) -> Rep:
    """Outer tensor product of S_a- and S_b-modules as a module for S_a x S_b <= S_{a+b}."""
    if not (V.is_symmetric_group_rep and W.is_symmetric_group_rep) or V.p != W.p:
        raise RepError("box needs two symmetric-group modules over the same field")
    a, b = V.n, W.n
    G = young_subgroup([a, b])
    iv, iw = identity(V.dim), identity(W.dim)
    mats = [kron(m, iw, V.p) for m in V.mats] + [kron(iv, m, V.p) for m in W.mats]
    return Rep(G, tuple(mats), V.p, label=f"{V.label}#{W.label}",
               dimension=V.dim * W.dim)


def _same_group(V: Rep, W: Rep):
    if V.p != W.p:
        raise RepError("modules over different fields")
    if V.group is not W.group and (V.group.n != W.group.n or V.group.gens != W.group.gens):
        raise RepError(f"modules for different groups: {V.group.name} vs {W.group.name}")


def restrict(V: Rep, G: PermGroup) -> Rep:
    if G.n != V.n:
        raise RepError(f"degree mismatch: {G.name} has degree {G.n}, module has degree {V.n}")
    mats = tuple(V.evaluate(g) for g in G.gens)
    return Rep(G, mats, V.p, label=f"{V.label}|{G.name}" if V.label else "", dimension=V.dim)


def as_symmetric(V: Rep, m: int) -> Rep:
    """View a module for the Young subgroup S_m x 1 x ... x 1 as an S_m-module."""
    want = tuple(range(1, m))
    if V.group.coxeter != want:
        raise RepError(f"{V.group.name} is not S_{m} on the first {m} points")
    return Rep(symmetric(m), V.mats, V.p, label=V.label, dimension=V.dim)


def induce(W: Rep, G: PermGroup, cap: Optional[int] = None) -> Rep:
    """Induce W from its group H up to G (block-monomial matrices on left cosets)."""
    H = W.group
    cap = cap if cap is not None else get_config().dim_cap
    reps, actions = coset_action(G, H, cap=max(1, cap // max(W.dim, 1)))
    m = len(reps)
    d = W.dim
    if m * d > cap:
        raise CapError(f"induced dimension {m * d} exceeds cap {cap}")
    inv_reps = [x.inverse() for x in reps]
    mats = []
    for k, s in enumerate(G.gens):
        big = np.zeros((m * d, m * d), dtype=np.int64)
        for j in range(m):
            jp = actions[k][j]
            h = inv_reps[jp] * s * reps[j]
            big[jp * d:(jp + 1) * d, j * d:(j + 1) * d] = W.evaluate(h)
        mats.append(big)
    return Rep(G, tuple(mats), W.p, label=f"Ind({W.label})")


def trivial_induced(G: PermGroup, p: int, ambient: Optional[PermGroup] = None,
                    cap: Optional[int] = None) -> Rep:
    """The permutation module on the left cosets of G in S_n."""
    S = ambient or symmetric(G.n)
    cap = cap if cap is not None else get_config().dim_cap
    reps, actions = coset_action(S, G, cap=cap)
    m = len(reps)
    mats = []
    for act in actions:
        P = np.zeros((m, m), dtype=np.int64)
        P[act, np.arange(m)] = 1
        mats.append(P)
    return Rep(S, tuple(mats), p, label=f"I({G.name})")


# ---------------------------------------------------------------- sub and quotient

def sub_rep(V: Rep, U: Subspace) -> Rep:
    """Action on an invariant subspace in the coordinates of its RREF basis."""
    piv = list(U.pivots)
    mats = []
    for m in V.mats:
        img = matmul(U.basis, m.T, V.p)   # rows: images of basis vectors
        mats.append(np.ascontiguousarray(img[:, piv].T))
    return Rep(V.group, tuple(mats), V.p, label=f"sub({V.label})", dimension=U.dim)


def quotient_rep(V: Rep, U: Subspace) -> Rep:
    """Action on V/U with basis the images of the non-pivot unit vectors."""
    q = U.complement_coords()
    mats = []
    for m in V.mats:
        cols = np.ascontiguousarray(m[:, q].T)   # rows = images of e_q
        red = U.reduce(cols)
        mats.append(np.ascontiguousarray(red[:, q].T))
    return Rep(V.group, tuple(mats), V.p, label=f"quot({V.label})", dimension=len(q))


# ---------------------------------------------------------------- spinning

def spin_up_many(mats_t: Sequence[np.ndarray], seeds: np.ndarray, p: int,
                 basis: Optional[EchelonBasis] = None, limit: Optional[int] = None) -> EchelonBasis:
    """Close the row space of ``seeds`` under v -> v M for M in mats_t (transposed generators)."""
    seeds = np.atleast_2d(np.asarray(seeds, dtype=np.int64) % p)
    d = seeds.shape[1]
    eb = basis or EchelonBasis(d, p)
    frontier, _ = eb.add(seeds)
    while frontier.shape[0]:
        if limit is not None and eb.rank >= limit:
            break
        imgs = np.concatenate([matmul(frontier, mt, p) for mt in mats_t])
        frontier, _ = eb.add(imgs)
    return eb


def spin_up(V: Rep, v) -> Subspace:
    """Smallest invariant subspace containing the vector(s) v."""
    v = np.atleast_2d(np.asarray(v, dtype=np.int64))
    if v.shape[1] != V.dim:
        raise RepError("vector length does not match the module dimension")
    return spin_up_many(V.transposed_mats(), v, V.p).subspace()


def fixed_points(V: Rep) -> Subspace:
    if not V.mats:
        return Subspace.full(V.dim, V.p)
    stacked = np.concatenate([(m - identity(V.dim)) % V.p for m in V.mats])
    return nullspace(stacked, V.p)


def is_intertwiner(T: np.ndarray, V: Rep, W: Rep) -> bool:
    return all(np.array_equal(matmul(T, a, V.p), matmul(b, T, V.p)) for a, b in zip(V.mats, W.mats))


def check_coxeter(V: Rep, full: bool = True) -> bool:
    """s_i^2 = 1, braid and commuting relations for an S_n-module."""
    if not V.is_symmetric_group_rep:
        raise RepError("Coxeter check needs a symmetric-group module")
    p, m = V.p, V.mats
    eye = identity(V.dim)
    k = len(m)
    for i in range(k):
        if not np.array_equal(matmul(m[i], m[i], p), eye):
            return False
    for i in range(k - 1):
        a = matmul(matmul(m[i], m[i + 1], p), m[i], p)
        b = matmul(matmul(m[i + 1], m[i], p), m[i + 1], p)
        if not np.array_equal(a, b):
            return False
    pairs = [(i, j) for i in range(k) for j in range(i + 2, k)]
    if not full:
        pairs = pairs[:: max(1, len(pairs) // 6)]
    for i, j in pairs:
        if not np.array_equal(matmul(m[i], m[j], p), matmul(m[j], m[i], p)):
            return False
    return True


# ---------------------------------------------------------------- random group algebra elements

class random_elements:
    """Seeded product-replacement stream of group elements, evaluated in several modules at once."""

    def __init__(self, reps: Sequence[Rep], seed: int = 0, slots: int = 8):
        self.reps = list(reps)
        self.p = reps[0].p
        self.rng = np.random.default_rng(seed)
        gens = [tuple(r.mats[k] for r in self.reps) for k in range(len(reps[0].mats))]
        if not gens:
            gens = [tuple(identity(r.dim) for r in self.reps)]
        self.slots = [gens[k % len(gens)] for k in range(max(slots, len(gens)))]
        self.acc = tuple(identity(r.dim) for r in self.reps)
        self.drawn = 0
        for _ in range(10):
            self._step()

    def _mul(self, a, b):
        return tuple(matmul(x, y, self.p) for x, y in zip(a, b))

    def _step(self):
        k = len(self.slots)
        i, j = self.rng.choice(k, size=2, replace=False) if k > 1 else (0, 0)
        if self.rng.integers(2):
            self.slots[i] = self._mul(self.slots[i], self.slots[j])
        else:
            self.slots[i] = self._mul(self.slots[j], self.slots[i])
        self.acc = self._mul(self.acc, self.slots[i])
        return self.acc

    def draw(self):
        self.drawn += 1
        return self._step()

    def algebra_element(self, terms: int = 2):
        """A random linear combination of fresh group elements plus a scalar."""
        out = [np.zeros((r.dim, r.dim), dtype=np.int64) for r in self.reps]
        for _ in range(terms):
            c = int(self.rng.integers(1, self.p)) if self.p > 2 else 1
            g = self.draw()
            for k in range(len(out)):
                out[k] = (out[k] + c * g[k]) % self.p
        c0 = int(self.rng.integers(0, self.p))
        for k in range(len(out)):
            out[k] = (out[k] + c0 * identity(out[k].shape[0])) % self.p
        return out


# ---------------------------------------------------------------- Hom spaces

def _theta_kernels(V: Rep, W: Rep, seed: int, tries: int = 4):
    """Kernels (ker theta_V, ker theta_W) for random algebra elements theta that are singular on V."""
    from .polyfp import eval_at_matrix, low_degree_factors
    from .fp_linalg import charpoly
    stream = random_elements([V, W], seed=seed)
    rng = np.random.default_rng(seed + 7919)
    out = []
    for _ in range(tries):
        aV, aW = stream.algebra_element()
        cp = charpoly(aV, V.p)
        facs = low_degree_factors(cp, V.p, min(V.dim, 6), rng)
        best = None
        for f in facs:
            tV = eval_at_matrix(f, aV, V.p)
            kV = nullspace(tV, V.p)
            if best is None or kV.dim < best[1].dim:
                best = (f, kV)
            if kV.dim == len(f) - 1:
                break
        if best is None:
            continue
        f, kV = best
        kW = nullspace(eval_at_matrix(f, aW, V.p), V.p)
        out.append((kV, kW))
    return out


class _HomSolver:
    """Spin V up from seed vectors while carrying their unknown images in W.

    Each echelon row is [v | T v] where T v is stored as a dW x U matrix that
    is linear in the unknown vector y (length U).  A row whose vector part
    reduces to zero gives the linear constraints T(0) = 0 on y.  The unknown
    space is periodically cut down to the solutions found so far.
    """

    def __init__(self, V: Rep, W: Rep):
        self.V, self.W, self.p = V, W, V.p
        self.dV, self.dW = V.dim, W.dim
        self.mats_t = V.transposed_mats()
        self.U = 0
        self.eb = EchelonBasis(self.dV, self.p, payload=0)
        self.cons: list = []

    def _apply(self, rows: np.ndarray, k: int) -> np.ndarray:
        p, dV, dW, U = self.p, self.dV, self.dW, self.U
        m = rows.shape[0]
        vec = matmul(rows[:, :dV], self.mats_t[k], p)
        if U == 0:
            return vec
        pay = rows[:, dV:].reshape(m, dW, U).transpose(1, 0, 2).reshape(dW, m * U)
        pay = matmul(self.W.mats[k], pay, p).reshape(dW, m, U).transpose(1, 0, 2).reshape(m, dW * U)
        return np.concatenate([vec, pay], axis=1)

    def _record(self, dep: np.ndarray):
        if dep.shape[0] and self.U:
            rows = dep.reshape(-1, self.U)
            rows = rows[np.any(rows, axis=1)]
            if rows.shape[0]:
                self.cons.append(rows)

    def _widen(self, u: int):
        eb, dV, dW, U = self.eb, self.dV, self.dW, self.U
        m = eb.rows.shape[0]
        wide = np.zeros((m, dV + dW * (U + u)), dtype=np.int64)
        wide[:, :dV] = eb.rows[:, :dV]
        if U:
            wide[:, dV:].reshape(m, dW, U + u)[:, :, :U] = eb.rows[:, dV:].reshape(m, dW, U)
        eb.rows = wide
        eb.payload = dW * (U + u)
        self.cons = [np.concatenate([c, np.zeros((c.shape[0], u), dtype=np.int64)], axis=1)
                     for c in self.cons]
        self.U = U + u

    def shrink(self):
        if not self.cons or self.U == 0:
            self.cons.clear()
            return
        C = np.concatenate(self.cons)
        self.cons.clear()
        N = nullspace(C, self.p).basis.T
        if N.shape[1] == self.U:
            return
        eb, dV, dW = self.eb, self.dV, self.dW
        m = eb.rows.shape[0]
        pay = eb.rows[:, dV:].reshape(m * dW, self.U)
        self.U = N.shape[1]
        pay = matmul(pay, N, self.p) if self.U else np.zeros((m * dW, 0), dtype=np.int64)
        eb.rows = np.concatenate([eb.rows[:, :dV], pay.reshape(m, dW * self.U)], axis=1)
        eb.payload = dW * self.U

    def _current(self, frontier: np.ndarray) -> np.ndarray:
        """Re-read frontier rows from the basis by their pivots (after a shrink)."""
        where = {c: i for i, c in enumerate(self.eb.pivots)}
        lead = [int(np.flatnonzero(r[: self.dV])[0]) for r in frontier]
        return self.eb.rows[[where[c] for c in lead]].copy()

    def add_seed(self, v: np.ndarray, images: np.ndarray):
        """Seed v whose image ranges over the row space of ``images`` (u x dW)."""
        u = images.shape[0]
        self._widen(u)
        row = np.zeros(self.dV + self.dW * self.U, dtype=np.int64)
        row[: self.dV] = v
        if u:
            row[self.dV:].reshape(self.dW, self.U)[:, self.U - u:] = images.T
        frontier, dep = self.eb.add(row[None, :])
        self._record(dep)
        self.shrink()
        if frontier.shape[0]:
            frontier = self._current(frontier)
        while frontier.shape[0] and self.mats_t:
            imgs = np.concatenate([self._apply(frontier, k) for k in range(len(self.mats_t))])
            frontier, dep = self.eb.add(imgs)
            self._record(dep)
            if sum(c.shape[0] for c in self.cons) >= max(self.U, 4):
                self.shrink()
                if frontier.shape[0]:
                    frontier = self._current(frontier)

    def result(self) -> list:
        self.shrink()
        order = np.argsort(self.eb.pivots)
        pay = self.eb.rows[order, self.dV:].reshape(self.dV, self.dW, self.U)
        return [np.ascontiguousarray(pay[:, :, k].T) % self.p for k in range(self.U)]


def hom_space(V: Rep, W: Rep, seed: int = 0) -> HomSpace:
    """All intertwiners T: V -> W, i.e. T rho_V(g) = rho_W(g) T for every generator.

    Seeds come from kernels of random algebra elements theta; a seed in
    ker theta_V must map into ker theta_W, which keeps the unknowns few.
    Unconstrained unit-vector seeds finish the spin if V is not yet covered.
    """
    _same_group(V, W)
    if V.dim == 0 or W.dim == 0:
        return HomSpace(V, W, [])
    solver = _HomSolver(V, W)
    if V.dim * W.dim > 64:
        for kV, kW in _theta_kernels(V, W, seed):
            for v in kV.basis:
                solver.add_seed(v, kW.basis)
            if solver.eb.rank == V.dim:
                break
    while solver.eb.rank < V.dim:
        e = np.zeros(V.dim, dtype=np.int64)
        e[solver.eb.subspace().complement_coords()[0]] = 1
        solver.add_seed(e, identity(W.dim))
    return HomSpace(V, W, solver.result())


def end_dim(V: Rep, seed: int = 0) -> int:
    return hom_space(V, V, seed=seed).dim
