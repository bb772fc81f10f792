"""Permutation groups on {1..n}: stabilizer chains, cosets, orbit counts and the named families."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations, product
from math import comb, factorial, prod
from typing import Iterable, Optional, Sequence

__all__ = [
    "Permutation", "PermGroup", "GroupError", "parse_permutation", "adjacent_word",
    "group", "symmetric", "alternating", "young_subgroup", "intransitive", "wreath",
    "point_stabilizer", "orbit_count_k_subsets", "is_k_transitive", "is_k_homogeneous",
    "coset_reps", "coset_action", "base_intersection_projections", "all_subgroups",
    "wreath_blocks", "action_on", "swapped_bisection",
]


class GroupError(ValueError):
    """Invalid group input (degree mismatch, non-subgroup, bad syntax)."""


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; ``img`` holds 0-based images. (g*h)(x) = g(h(x))."""

    img: tuple

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "Permutation":
        """From 1-based images: images[j] is the image of j+1."""
        img = tuple(int(x) - 1 for x in images)
        if sorted(img) != list(range(len(img))):
            raise GroupError(f"not a permutation: {list(images)}")
        return cls(img)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            pts = [int(x) - 1 for x in cyc]
            if any(not 0 <= x < n for x in pts) or seen.intersection(pts) or len(set(pts)) != len(pts):
                raise GroupError(f"bad cycle {tuple(cyc)} for degree {n}")
            seen.update(pts)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        return cls(tuple(img))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        return cls.from_cycles(n, [(a, b)])

    @property
    def n(self) -> int:
        return len(self.img)

    @property
    def images(self) -> list:
        return [x + 1 for x in self.img]

    def __call__(self, point: int) -> int:
        return self.img[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.n != self.n:
            raise GroupError("degree mismatch")
        a = self.img
        return Permutation(tuple(a[x] for x in other.img))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, x in enumerate(self.img):
            inv[x] = i
        return Permutation(tuple(inv))

    def __pow__(self, e: int) -> "Permutation":
        if e < 0:
            return self.inverse() ** (-e)
        out = Permutation.identity(self.n)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.img))

    def cycles(self) -> list:
        seen = [False] * self.n
        out = []
        for i in range(self.n):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self.img[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm
        return lcm(1, *(len(c) for c in self.cycles()))

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def moved_points(self) -> list:
        return [i + 1 for i, x in enumerate(self.img) if i != x]

    def __str__(self):
        cyc = self.cycles()
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc) or "()"

    def __repr__(self):
        return f"Permutation{self}"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, n: int) -> Permutation:
    """Parse cycle notation such as "(1,2)(3,4,5)"; "()" is the identity."""
    text = text.strip()
    if not text:
        raise GroupError("empty permutation text")
    stripped = _CYCLE_RE.sub("", text).strip()
    if stripped:
        raise GroupError(f"cannot parse permutation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        body = body.strip()
        if not body:
            continue
        try:
            cycles.append([int(x) for x in body.split(",")])
        except ValueError as exc:
            raise GroupError(f"cannot parse permutation {text!r}") from exc
    return Permutation.from_cycles(n, cycles)


def adjacent_word(g: Permutation) -> list:
    """Indices i with g = s_{i_1} s_{i_2} ... s_{i_k}, s_i = (i, i+1), a reduced word."""
    a = list(g.img)
    collected = []
    n = len(a)
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if a[i] > a[i + 1]:
                a[i], a[i + 1] = a[i + 1], a[i]
                collected.append(i + 1)
                changed = True
    collected.reverse()
    return collected


# ---------------------------------------------------------------- stabilizer chain

@dataclass
class _Chain:
    base: list
    strong: list          # list of (Permutation, slp index)
    trans: list           # per level: dict point -> (Permutation, slp index)
    slp: list             # straight-line program: ("g", i) | ("m", a, b) | ("i", a) | ("e",)


def _schreier_sims(gens: Sequence[Permutation], n: int) -> _Chain:
    slp: list = [("e",)]
    ident = Permutation.identity(n)
    strong = []
    for k, g in enumerate(gens):
        slp.append(("g", k))
        if not g.is_identity():
            strong.append((g, len(slp) - 1))

    def mul(x, y):
        slp.append(("m", x[1], y[1]))
        return (x[0] * y[0], len(slp) - 1)

    def inv(x):
        slp.append(("i", x[1]))
        return (x[0].inverse(), len(slp) - 1)

    base: list = []
    for g, _ in strong:
        if all(g.img[b] == b for b in base):
            base.append(g.moved_points()[0] - 1)

    trans: list = []

    def level_gens(i):
        return [s for s in strong if all(s[0].img[b] == b for b in base[:i])]

    def orbit(i):
        b = base[i]
        t = {b: (ident, 0)}
        queue = [b]
        gs = level_gens(i)
        for x in queue:
            for s in gs:
                y = s[0].img[x]
                if y not in t:
                    t[y] = mul(s, t[x])
                    queue.append(y)
        return t

    def strip(g, start):
        for i in range(start, len(base)):
            y = g[0].img[base[i]]
            if y not in trans[i]:
                return g, i
            g = mul(inv(trans[i][y]), g)
        return g, len(base)

    trans = [None] * len(base)
    i = len(base) - 1
    while i >= 0:
        trans[i] = orbit(i)
        restart = None
        for x, u in list(trans[i].items()):
            for s in level_gens(i):
                y = s[0].img[x]
                sg = mul(inv(trans[i][y]), mul(s, u))
                h, j = strip(sg, i + 1)
                if not h[0].is_identity():
                    strong.append(h)
                    if j == len(base):
                        base.append(h[0].moved_points()[0] - 1)
                        trans.append(None)
                    restart = j
                    break
            if restart is not None:
                break
        if restart is None:
            i -= 1
        else:
            for lv in range(i + 1, restart + 1):
                trans[lv] = orbit(lv)
            i = restart
    return _Chain(base, strong, trans, slp)


class PermGroup:
    """Subgroup of S_n given by generators; the stabilizer chain is built on first use."""

    def __init__(self, n: int, gens: Sequence[Permutation] = (), name: str = "",
                 coxeter: Optional[Sequence[int]] = None):
        gens = tuple(gens)
        if any(g.n != n for g in gens):
            raise GroupError("generator degree mismatch")
        self.n = n
        self.gens = gens
        self.name = name or f"<{len(gens)} gens>"
        # indices i such that gens[k] = s_{coxeter[k]}; set for Young subgroups
        self.coxeter = tuple(coxeter) if coxeter is not None else None

    def __repr__(self):
        return f"PermGroup({self.name}, n={self.n})"

    @cached_property
    def _chain(self) -> _Chain:
        return _schreier_sims(self.gens, self.n)

    @property
    def base(self) -> list:
        return [b + 1 for b in self._chain.base]

    @cached_property
    def order(self) -> int:
        return prod(len(t) for t in self._chain.trans)

    def sift(self, g: Permutation):
        ch = self._chain
        factors = []
        for i, b in enumerate(ch.base):
            y = g.img[b]
            if y not in ch.trans[i]:
                return None
            u = ch.trans[i][y]
            factors.append(u[1])
            g = u[0].inverse() * g
        return factors if g.is_identity() else None

    def __contains__(self, g: Permutation) -> bool:
        return g.n == self.n and self.sift(g) is not None

    def factor(self, g: Permutation) -> list:
        """SLP indices u_1..u_m with g = u_1 u_2 ... u_m."""
        f = self.sift(g)
        if f is None:
            raise GroupError(f"{g} is not in {self.name}")
        return f

    @property
    def slp(self) -> list:
        return self._chain.slp

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.n == other.n and all(g in other for g in self.gens)

    def elements(self, cap: int = 200000) -> list:
        if self.order > cap:
            raise GroupError(f"group of order {self.order} too large to enumerate")
        ch = self._chain
        elts = [Permutation.identity(self.n)]
        for t in reversed(ch.trans):
            elts = [u[0] * e for u in t.values() for e in elts]
        return elts

    def orbits(self) -> list:
        seen = set()
        out = []
        for x in range(self.n):
            if x in seen:
                continue
            orb = [x]
            seen.add(x)
            for y in orb:
                for g in self.gens:
                    z = g.img[y]
                    if z not in seen:
                        seen.add(z)
                        orb.append(z)
            out.append(sorted(v + 1 for v in orb))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def fixes_a_point(self) -> bool:
        return any(len(o) == 1 for o in self.orbits())

    def minimal_block(self, a: int, b: int) -> list:
        """Smallest block of imprimitivity containing points a and b."""
        return self.block_closure([a, b])

    def block_closure(self, points: Sequence[int]) -> list:
        """Smallest block of imprimitivity containing all the given points."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        pts = [x - 1 for x in points]
        queue = [(pts[0], y) for y in pts[1:]]
        while queue:
            x, y = queue.pop()
            rx, ry = find(x), find(y)
            if rx == ry:
                continue
            parent[ry] = rx
            for g in self.gens:
                queue.append((g.img[x], g.img[y]))
        r = find(pts[0])
        return [i + 1 for i in range(self.n) if find(i) == r]

    def blocks_containing(self, a: int = 1) -> list:
        """All blocks of imprimitivity through point a, including {a} and the whole orbit."""
        orbit = next(o for o in self.orbits() if a in o)
        found = {(a,)}
        queue = [(a,)]
        while queue:
            B = queue.pop()
            for x in orbit:
                if x in B:
                    continue
                C = tuple(self.block_closure(list(B) + [x]))
                if C not in found:
                    found.add(C)
                    queue.append(C)
        return sorted((list(B) for B in found), key=lambda B: (len(B), B))

    def element_orders(self, cap: int = 200000) -> list:
        return sorted({g.order() for g in self.elements(cap)})

    def is_primitive(self) -> bool:
        if not self.is_transitive():
            return False
        return all(len(self.minimal_block(1, b)) == self.n for b in range(2, self.n + 1))

    def fixes_block_system(self, blocks: Sequence[Sequence[int]]) -> bool:
        where = {}
        for k, blk in enumerate(blocks):
            for x in blk:
                where[x] = k
        for g in self.gens:
            for blk in blocks:
                if len({where[g(x)] for x in blk}) != 1:
                    return False
        return True


def group(gens: Sequence[Permutation], n: Optional[int] = None, name: str = "") -> PermGroup:
    gens = list(gens)
    if n is None:
        if not gens:
            raise GroupError("degree needed for an empty generator list")
        n = gens[0].n
    return PermGroup(n, gens, name=name)


def action_on(G: PermGroup, points: Sequence[int]) -> PermGroup:
    """The permutation group induced on an invariant set, relabelled 1..len(points)."""
    pts = list(points)
    where = {x: k for k, x in enumerate(pts)}
    gens = []
    for g in G.gens:
        img = tuple(where[g(x)] for x in pts)
        if img != tuple(range(len(pts))):
            gens.append(Permutation(img))
    return PermGroup(len(pts), gens, name=f"{G.name}|orbit")


def swapped_bisection(G: PermGroup) -> Optional[list]:
    """A set A with |A| = n/2 such that G preserves {A, complement} and swaps the two.

    Every orbit must split into two halves forming a block system, and the parity of
    swapping must agree across orbits; returns A or None.
    """
    n = G.n
    if n % 2:
        return None
    per_orbit = []
    for orb in G.orbits():
        m = len(orb)
        if m % 2:
            return None
        H = action_on(G, orb)
        options = []
        for B in H.blocks_containing(1):
            if len(B) != m // 2:
                continue
            half = {orb[x - 1] for x in B}
            chi = tuple(int(g(orb[0]) not in half) for g in G.gens)    # orb[0] lies in half
            options.append((chi, sorted(half)))
        if not options:
            return None
        per_orbit.append(options)
    for combo in product(*per_orbit):
        chis = {c for c, _ in combo}
        if len(chis) == 1 and any(next(iter(chis))):
            return sorted(x for _, half in combo for x in half)
    return None


# ---------------------------------------------------------------- named families

def _adj(n: int, i: int) -> Permutation:
    return Permutation.transposition(n, i, i + 1)


def young_subgroup(mu: Sequence[int], name: str = "") -> PermGroup:
    mu = [int(x) for x in mu]
    if any(x < 0 for x in mu) or sum(mu) == 0:
        raise GroupError(f"invalid composition {mu}")
    n = sum(mu)
    idx = []
    start = 1
    for m in mu:
        idx.extend(range(start, start + m - 1))
        start += m
    return PermGroup(n, [_adj(n, i) for i in idx], coxeter=idx,
                     name=name or "young:" + ",".join(map(str, mu)))


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise GroupError("n must be positive")
    return young_subgroup([n], name=f"S{n}")


def point_stabilizer(n: int) -> PermGroup:
    return young_subgroup([n - 1, 1], name=f"S{n - 1}")


def intransitive(n: int, k: int) -> PermGroup:
    if not 0 < k < n:
        raise GroupError(f"intransitive:{n}:{k} needs 0 < k < n")
    return young_subgroup([n - k, k], name=f"intransitive:{n}:{k}")


def alternating(n: int) -> PermGroup:
    if n < 1:
        raise GroupError("n must be positive")
    gens = [Permutation.from_cycles(n, [(1, 2, i)]) for i in range(3, n + 1)]
    return PermGroup(n, gens, name=f"A{n}")


def wreath(a: int, b: int) -> PermGroup:
    """S_a wr S_b; block i is {(i-1)a+1, ..., ia}."""
    if a < 1 or b < 1:
        raise GroupError("wreath needs a, b >= 1")
    n = a * b
    gens = [_adj(n, i) for i in range(1, a)]
    if b >= 2:
        gens.append(Permutation.from_cycles(n, [(x, a + x) for x in range(1, a + 1)]))
    if b >= 3:
        gens.append(Permutation(tuple((x + a) % n for x in range(n))))
    return PermGroup(n, gens, name=f"wreath:{a}:{b}")


def wreath_blocks(a: int, b: int) -> list:
    return [list(range(k * a + 1, (k + 1) * a + 1)) for k in range(b)]


# ---------------------------------------------------------------- orbit counts

def _count_orbits(items: list, act) -> int:
    index = {x: k for k, x in enumerate(items)}
    seen = [False] * len(items)
    count = 0
    for k in range(len(items)):
        if seen[k]:
            continue
        count += 1
        seen[k] = True
        stack = [items[k]]
        while stack:
            x = stack.pop()
            for y in act(x):
                j = index[y]
                if not seen[j]:
                    seen[j] = True
                    stack.append(y)
    return count


def orbit_count_k_subsets(G: PermGroup, k: int) -> int:
    if not 0 <= k <= G.n:
        raise GroupError("k out of range")
    items = [frozenset(c) for c in combinations(range(G.n), k)]
    return _count_orbits(items, lambda s: [frozenset(g.img[x] for x in s) for g in G.gens])


def is_k_homogeneous(G: PermGroup, k: int) -> bool:
    return orbit_count_k_subsets(G, k) == 1


def is_k_transitive(G: PermGroup, k: int) -> bool:
    if not 0 <= k <= G.n:
        raise GroupError("k out of range")
    items = list(permutations(range(G.n), k))
    return _count_orbits(items, lambda t: [tuple(g.img[x] for x in t) for g in G.gens]) == 1


# ---------------------------------------------------------------- cosets

def _coset_key(g: Permutation, H: PermGroup) -> tuple:
    """Lexicographically least base image over the left coset gH."""
    ch = H._chain
    for i, b in enumerate(ch.base):
        best = min(ch.trans[i], key=lambda y: g.img[y])
        g = g * ch.trans[i][best][0]
    return tuple(g.img)


def coset_action(G: PermGroup, H: PermGroup, cap: Optional[int] = None):
    """Left coset representatives x_j of H in G and, per generator s of G, the
    permutation j -> j' with s x_j H = x_{j'} H (0-based list)."""
    if not H.is_subgroup_of(G):
        raise GroupError(f"{H.name} is not a subgroup of {G.name}")
    if cap is not None and G.order // H.order > cap:
        raise GroupError(f"index {G.order // H.order} exceeds cap {cap}")
    ident = Permutation.identity(G.n)
    reps = [ident]
    index = {_coset_key(ident, H): 0}
    actions = [[] for _ in G.gens]
    j = 0
    while j < len(reps):
        x = reps[j]
        for k, s in enumerate(G.gens):
            y = s * x
            key = _coset_key(y, H)
            if key not in index:
                index[key] = len(reps)
                reps.append(y)
            actions[k].append(index[key])
        j += 1
    return reps, actions


def coset_reps(G: PermGroup, H: PermGroup) -> list:
    return coset_action(G, H)[0]


# ---------------------------------------------------------------- wreath projections

def base_intersection_projections(G: PermGroup, a: int):
    """For G <= S_a wr S_2: (G cap B, projection to block 1, projection to block 2)."""
    n = 2 * a
    if G.n != n or not G.is_subgroup_of(wreath(a, 2)):
        raise GroupError(f"{G.name} is not inside wreath:{a}:2")

    def swaps(g):
        return g.img[0] >= a

    gens = list(G.gens)
    t = next((g for g in gens if swaps(g)), None)
    if t is None:
        kernel = gens
    else:
        tinv = t.inverse()
        kernel = []
        for s in gens:
            for r in (Permutation.identity(n), t):
                sr = s * r
                rep = t if swaps(sr) else Permutation.identity(n)
                rep_inv = tinv if swaps(sr) else rep
                k = rep_inv * sr
                if not k.is_identity():
                    kernel.append(k)
    uniq = list(dict.fromkeys(kernel))
    GB = PermGroup(n, uniq, name=f"{G.name}&base")
    p1 = PermGroup(a, list(dict.fromkeys(Permutation(g.img[:a]) for g in uniq)), name="proj1")
    p2 = PermGroup(a, list(dict.fromkeys(Permutation(tuple(x - a for x in g.img[a:])) for g in uniq)),
                   name="proj2")
    return GB, p1, p2


# ---------------------------------------------------------------- subgroup lattice

def all_subgroups(G: PermGroup, cap: int = 5000) -> list:
    """Every subgroup of a small group, as PermGroups with few generators."""
    elts = G.elements(cap)
    ident = Permutation.identity(G.n)

    def closure(gens):
        S = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = g * x
                    if y not in S:
                        S.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(S)

    found = {frozenset([ident]): []}
    queue = [frozenset([ident])]
    while queue:
        nxt = []
        for S in queue:
            gens = found[S]
            for g in elts:
                if g in S:
                    continue
                T = closure(gens + [g])
                if T not in found:
                    found[T] = gens + [g]
                    nxt.append(T)
        queue = nxt
    out = []
    for k, (S, gens) in enumerate(sorted(found.items(), key=lambda kv: (len(kv[0]), sorted(p.img for p in kv[0])))):
        out.append(PermGroup(G.n, gens, name=f"sub{k}(order {len(S)})"))
    return out
