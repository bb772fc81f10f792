"""Partitions, residues, i-signatures, crystal operators and the Mullineux map."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

__all__ = [
    "Partition", "Node", "Signature", "MullineuxSymbol", "PartitionError",
    "parse_partition", "is_p_regular", "dominance_leq", "residue_content", "residue",
    "addable_removable", "signature", "epsilon", "phi", "e_tilde", "f_tilde", "is_JS",
    "rim", "p_rim", "mullineux_symbol", "mullineux", "special_partition",
    "theorem_A_iv_condition", "good_cogood_swap_singular", "lemma_l22_case",
    "enumerate_partitions", "enumerate_p_regular", "gamma",
]


class PartitionError(ValueError):
    """Domain error on partition input."""


Node = tuple  # (row, column), 1-based


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x <= 0 for x in parts):
            raise PartitionError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise PartitionError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts) -> "Partition":
        if len(parts) == 1 and not isinstance(parts[0], int):
            parts = tuple(parts[0])
        return cls(tuple(x for x in parts if x))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def h(self) -> int:
        return len(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, r: int) -> int:
        """1-based row length, 0 beyond the last row."""
        return self.parts[r - 1] if 1 <= r <= len(self.parts) else 0

    def __iter__(self):
        return iter(self.parts)

    def nodes(self) -> Iterator[Node]:
        for r, length in enumerate(self.parts, start=1):
            for s in range(1, length + 1):
                yield (r, s)

    def remove(self, node: Node) -> "Partition":
        r, s = node
        if self[r] != s or self[r + 1] >= s:
            raise PartitionError(f"{node} is not removable from {self}")
        parts = list(self.parts)
        parts[r - 1] -= 1
        return Partition.of(parts)

    def add(self, node: Node) -> "Partition":
        r, s = node
        if self[r] != s - 1 or (r > 1 and self[r - 1] < s):
            raise PartitionError(f"{node} is not addable to {self}")
        parts = list(self.parts) + [0]
        parts[r - 1] += 1
        return Partition.of(parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition.of([sum(1 for x in self.parts if x >= c) for c in range(1, self.parts[0] + 1)])

    def __add__(self, other: "Partition") -> "Partition":
        k = max(self.h, other.h)
        return Partition.of([self[r] + other[r] for r in range(1, k + 1)])

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.parts) + ")"

    def __repr__(self):
        return f"Partition{self}"


_PART_RE = re.compile(r"^\s*\(?\s*([0-9\s,]*)\)?\s*$")


def parse_partition(text: str) -> Partition:
    """Parse "(6,4,1)" (parentheses optional)."""
    m = _PART_RE.match(text)
    if not m:
        raise PartitionError(f"cannot parse partition {text!r}")
    body = m.group(1).strip()
    if not body:
        return Partition(())
    try:
        parts = [int(x) for x in body.split(",") if x.strip()]
    except ValueError as exc:
        raise PartitionError(f"cannot parse partition {text!r}") from exc
    return Partition.of(parts)


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition.of(lam)


def is_p_regular(lam, p: int) -> bool:
    lam = _as_partition(lam)
    run = 1
    for i in range(1, lam.h):
        run = run + 1 if lam.parts[i] == lam.parts[i - 1] else 1
        if run >= p:
            return False
    return True


def _require_regular(lam: Partition, p: int):
    if not is_p_regular(lam, p):
        raise PartitionError(f"{lam} is not {p}-regular")


def dominance_leq(lam, mu) -> bool:
    """lam is dominated by mu."""
    lam, mu = _as_partition(lam), _as_partition(mu)
    if lam.n != mu.n:
        raise PartitionError("dominance needs partitions of the same size")
    a = b = 0
    for r in range(1, max(lam.h, mu.h) + 1):
        a += lam[r]
        b += mu[r]
        if a > b:
            return False
    return True


def residue(node: Node, p: int) -> int:
    r, s = node
    return (s - r) % p


def residue_content(lam, p: int) -> tuple:
    lam = _as_partition(lam)
    counts = [0] * p
    for node in lam.nodes():
        counts[residue(node, p)] += 1
    return tuple(counts)


def gamma(i: int, p: int) -> tuple:
    return tuple(1 if j == i % p else 0 for j in range(p))


def removable_nodes(lam: Partition) -> list:
    return [(r, lam[r]) for r in range(1, lam.h + 1) if lam[r] > lam[r + 1]]


def addable_nodes(lam: Partition) -> list:
    out = [(r, lam[r] + 1) for r in range(1, lam.h + 1) if r == 1 or lam[r - 1] > lam[r]]
    out.append((lam.h + 1, 1))
    return out


def addable_removable(lam, i: int, p: int):
    lam = _as_partition(lam)
    i %= p
    add = [a for a in addable_nodes(lam) if residue(a, p) == i]
    rem = [b for b in removable_nodes(lam) if residue(b, p) == i]
    return add, rem


@dataclass(frozen=True)
class Signature:
    i: int
    word: tuple      # ((node, sign), ...) in reading order, sign '+' or '-'
    reduced: tuple   # surviving entries, same format

    @property
    def normal(self) -> list:
        return [nd for nd, s in self.reduced if s == "-"]

    @property
    def conormal(self) -> list:
        return [nd for nd, s in self.reduced if s == "+"]

    @property
    def epsilon(self) -> int:
        return len(self.normal)

    @property
    def phi(self) -> int:
        return len(self.conormal)

    @property
    def good(self) -> Optional[Node]:
        nm = self.normal
        return nm[0] if nm else None

    @property
    def cogood(self) -> Optional[Node]:
        cn = self.conormal
        return cn[-1] if cn else None

    def text(self) -> str:
        return "".join(s for _, s in self.word)


def signature(lam, i: int, p: int) -> Signature:
    """i-signature read from the bottom-left (largest row) to the top-right."""
    lam = _as_partition(lam)
    add, rem = addable_removable(lam, i, p)
    entries = [(nd, "+") for nd in add] + [(nd, "-") for nd in rem]
    entries.sort(key=lambda e: -e[0][0])
    stack: list = []
    for e in entries:
        if e[1] == "+" and stack and stack[-1][1] == "-":
            stack.pop()
        else:
            stack.append(e)
    return Signature(i % p, tuple(entries), tuple(stack))


def epsilon(lam, i: int, p: int) -> int:
    return signature(lam, i, p).epsilon


def phi(lam, i: int, p: int) -> int:
    return signature(lam, i, p).phi


def e_tilde(lam, i: int, p: int) -> Optional[Partition]:
    lam = _as_partition(lam)
    _require_regular(lam, p)
    g = signature(lam, i, p).good
    return None if g is None else lam.remove(g)


def f_tilde(lam, i: int, p: int) -> Optional[Partition]:
    lam = _as_partition(lam)
    _require_regular(lam, p)
    c = signature(lam, i, p).cogood
    return None if c is None else lam.add(c)


def is_JS(lam, p: int) -> bool:
    lam = _as_partition(lam)
    _require_regular(lam, p)
    return sum(epsilon(lam, i, p) for i in range(p)) == 1


# ---------------------------------------------------------------- Mullineux

def rim(lam: Partition) -> list:
    """Rim nodes read from the top-right to the bottom-left."""
    out = []
    for r in range(1, lam.h + 1):
        lo = max(lam[r + 1], 1)
        out.extend((r, s) for s in range(lam[r], lo - 1, -1))
    return out


def p_rim(lam: Partition, p: int) -> list:
    nodes = rim(lam)
    out = []
    k = 0
    while k < len(nodes):
        seg = nodes[k: k + p]
        out.extend(seg)
        last_row = seg[-1][0]
        k += len(seg)
        while k < len(nodes) and nodes[k][0] <= last_row:
            k += 1
    return out


def _remove_nodes(lam: Partition, nodes) -> Partition:
    parts = list(lam.parts)
    for r, _ in nodes:
        parts[r - 1] -= 1
    return Partition.of(parts)


@dataclass(frozen=True)
class MullineuxSymbol:
    a: tuple
    r: tuple

    def columns(self):
        return list(zip(self.a, self.r))


def mullineux_symbol(lam, p: int) -> MullineuxSymbol:
    lam = _as_partition(lam)
    _require_regular(lam, p)
    a, r = [], []
    cur = lam
    while cur.n:
        pr = p_rim(cur, p)
        a.append(len(pr))
        r.append(cur.h)
        cur = _remove_nodes(cur, pr)
    return MullineuxSymbol(tuple(a), tuple(r))


@lru_cache(maxsize=None)
def _symbol_table(n: int, p: int) -> dict:
    return {mullineux_symbol(lam, p): lam for lam in enumerate_p_regular(n, p)}


def partition_from_symbol(sym: MullineuxSymbol, p: int) -> Partition:
    n = sum(sym.a)
    try:
        return _symbol_table(n, p)[sym]
    except KeyError:
        raise PartitionError(f"no {p}-regular partition has symbol {sym}") from None


def mullineux(lam, p: int) -> Partition:
    lam = _as_partition(lam)
    sym = mullineux_symbol(lam, p)
    new_r = []
    for a, r in sym.columns():
        x = 0 if a % p == 0 else 1
        new_r.append(a + x - r)
    return partition_from_symbol(MullineuxSymbol(sym.a, tuple(new_r)), p)


# ---------------------------------------------------------------- special labels

def special_partition(kind: str, n: int) -> Partition:
    if n < 2:
        raise PartitionError("special partitions need n >= 2")
    if kind == "alpha":
        return Partition.of(n - 1, 1)
    if kind == "beta":
        if n % 2 == 0:
            return Partition.of(n // 2 + 1, n // 2 - 1)
        return Partition.of((n + 1) // 2, (n - 1) // 2)
    raise PartitionError(f"unknown special partition {kind!r}")


def _parity_chain_holds(lam: Partition, j: int) -> bool:
    """lam_j = lam_{j+1} + 2 with parities constant on [1, j-1], [j, j+1], [j+2, h], alternating across."""
    h = lam.h
    if not 1 <= j <= h or lam[j] != lam[j + 1] + 2:
        return False
    par = [lam[t] % 2 for t in range(1, h + 2)]  # par[t-1] is lam_t mod 2, lam_{h+1} = 0
    head, mid, tail = par[: j - 1], par[j - 1: j + 1], par[j + 1: h]
    if any(x != mid[0] for x in mid):
        return False
    if head and (any(x != head[0] for x in head) or head[0] == mid[0]):
        return False
    if tail and (any(x != tail[0] for x in tail) or tail[0] == mid[0]):
        return False
    return True


def theorem_A_iv_condition(lam) -> Optional[int]:
    """First j in 1..h(lam) satisfying the Theorem A(iv) parity chain, else None."""
    lam = _as_partition(lam)
    for j in range(1, lam.h + 1):
        if _parity_chain_holds(lam, j):
            return j
    return None


def good_cogood_swap_singular(lam, i: int, p: int) -> bool:
    """(lam_B)^C is p-singular, by the node-arithmetic criterion c = a+p-1, d = b-1."""
    sig = signature(lam, i, p)
    b, c = sig.good, sig.cogood
    if b is None or c is None:
        raise PartitionError("needs both a good and a cogood node")
    return c[0] == b[0] + p - 1 and c[1] == b[1] - 1


def lemma_l22_case(lam, i: int):
    """None if (lam_B)^C is 2-regular, else ("a", j) or ("b",) by the row j of the good node B."""
    lam = _as_partition(lam)
    p = 2
    _require_regular(lam, p)
    if epsilon(lam, 0, p) + epsilon(lam, 1, p) != 2:
        raise PartitionError("needs eps_0 + eps_1 = 2")
    sig = signature(lam, i, p)
    if sig.epsilon == 0 or sig.phi == 0:
        raise PartitionError("needs eps_i > 0 and phi_i > 0")
    if not good_cogood_swap_singular(lam, i, p):
        return None
    h = lam.h
    j = sig.good[0]
    if j == h:
        if lam[h] == 2 and all(lam[t] % 2 == 1 for t in range(1, h)):
            return ("b",)
    elif h >= 3 and _parity_chain_holds(lam, j):
        return ("a", j)
    raise PartitionError(f"{lam}: singular (lam_B)^C without either parity pattern")


# ---------------------------------------------------------------- enumeration

def enumerate_partitions(n: int, maxpart: Optional[int] = None) -> Iterator[Partition]:
    """All partitions of n in lexicographically descending order."""
    if maxpart is None:
        maxpart = n

    def rec(m, mx):
        if m == 0:
            yield ()
            return
        for first in range(min(m, mx), 0, -1):
            for rest in rec(m - first, first):
                yield (first,) + rest

    for parts in rec(n, maxpart):
        yield Partition(parts)


def enumerate_p_regular(n: int, p: int) -> list:
    return [lam for lam in enumerate_partitions(n) if is_p_regular(lam, p)]
