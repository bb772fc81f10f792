"""Necessary conditions for irreducible restrictions D^lambda|G, exact decisions where they are
known to be iff statements, and a sweep that compares them with MeatAxe verdicts."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from math import factorial
from pathlib import Path
from typing import Iterable, Optional, Sequence

from . import __version__
from .config import get_config
from .meataxe import ABS_IRR, IRR_NOT_ABS, is_isomorphic, meataxe
from .partitions import (Partition, PartitionError, _as_partition, enumerate_p_regular, is_JS,
                         mullineux, parse_partition, special_partition, theorem_A_iv_condition)
from .perm_groups import (GroupError, PermGroup, alternating, base_intersection_projections, group,
                          is_k_homogeneous, is_k_transitive, parse_permutation, point_stabilizer,
                          swapped_bisection, symmetric, wreath, young_subgroup)
from .reps import CapError, box, restrict, trivial
from .specht import hook_dim, irreducible

__all__ = [
    "SubgroupDescriptor", "parse_group_spec", "describe", "ClassificationOutcome",
    "NECESSARILY_REDUCIBLE", "POSSIBLY_IRREDUCIBLE", "IRREDUCIBLE", "REDUCIBLE",
    "theorem_A_cases", "theorem_B_decide", "theorem_TNat_decide", "ground_truth",
    "intransitive_product_decide", "wreath_decide", "classify", "family_groups", "survey",
    "DomainError", "named_group",
]

NECESSARILY_REDUCIBLE = "NecessarilyReducible"
POSSIBLY_IRREDUCIBLE = "PossiblyIrreducible"
IRREDUCIBLE = "Irreducible"
REDUCIBLE = "Reducible"


class DomainError(ValueError):
    """Input outside the hypotheses of a decision procedure."""


# ---------------------------------------------------------------- subgroups

@dataclass
class SubgroupDescriptor:
    kind: str            # Sn, An, stab, young, intransitive, wreath, named, gens
    n: int
    params: tuple
    group: PermGroup
    spec: str

    @property
    def name(self) -> str:
        return self.spec

    @property
    def order(self) -> int:
        return self.group.order

    @cached_property
    def flags(self) -> dict:
        G = self.group
        transitive = G.is_transitive()
        return {
            "transitive": transitive,
            "primitive": transitive and G.is_primitive(),
            "fixes_point": G.fixes_a_point(),
            "2-transitive": is_k_transitive(G, 2) if transitive else False,
            "3-homogeneous": is_k_homogeneous(G, 3) if transitive else False,
            "swapped_bisection": swapped_bisection(G) is not None,
        }


_DATA = "data/groups"


def named_group(name: str) -> PermGroup:
    """A shipped primitive group by file stem (agl1_5, pgl2_5, s6_on_10, m10, pgl2_9, ...)."""
    try:
        text = resources.files("snmod").joinpath(f"{_DATA}/{name}.txt").read_text()
    except FileNotFoundError:
        raise GroupError(f"no shipped group called {name!r}") from None
    return _group_from_text(text, name)


def _group_from_text(text: str, name: str, n: Optional[int] = None) -> PermGroup:
    lines = [ln.strip() for ln in text.splitlines()]
    for ln in lines:
        if ln.startswith("#") and "degree" in ln:
            toks = ln.split()
            n = int(toks[toks.index("degree") + 1])
    gens_text = [ln for ln in lines if ln and not ln.startswith("#")]
    if n is None:
        raise GroupError(f"{name}: degree unknown (add a '# degree n' line or pass n)")
    return group([parse_permutation(g, n) for g in gens_text], n=n, name=name)


def _ints(text: str) -> list:
    return [int(x) for x in text.strip("()[] ").replace(";", ",").split(",") if x.strip()]


def parse_group_spec(spec: str, n: int) -> SubgroupDescriptor:
    """Sn, An, S{n-1}/stab, young:mu, intransitive:n:k, wreath:a:b, named:NAME, gens:FILE."""
    s = spec.strip()
    low = s.lower()
    if low in ("sn", f"s{n}"):
        return SubgroupDescriptor("Sn", n, (), symmetric(n), f"S{n}")
    if low in ("an", f"a{n}"):
        return SubgroupDescriptor("An", n, (), alternating(n), f"A{n}")
    if low in ("stab", "sn-1", f"s{n - 1}"):
        return SubgroupDescriptor("stab", n, (n - 1, 1), point_stabilizer(n), f"S{n - 1}")
    head, _, rest = s.partition(":")
    head = head.lower()
    try:
        if head == "young":
            mu = _ints(rest)
            if sum(mu) != n:
                raise GroupError(f"young:{rest} is not a composition of {n}")
            return SubgroupDescriptor("young", n, tuple(mu), young_subgroup(mu), "young:" + ",".join(map(str, mu)))
        if head == "intransitive":
            m, k = (int(x) for x in rest.split(":"))
            if m != n or not 0 < k < n:
                raise GroupError(f"intransitive:{rest} does not fit n = {n}")
            return SubgroupDescriptor("intransitive", n, (n - k, k), young_subgroup([n - k, k]),
                                      f"intransitive:{n}:{k}")
        if head == "wreath":
            a, b = (int(x) for x in rest.split(":"))
            if a * b != n or a < 1 or b < 1:
                raise GroupError(f"wreath:{rest} does not have degree {n}")
            return SubgroupDescriptor("wreath", n, (a, b), wreath(a, b), f"wreath:{a}:{b}")
        if head == "named":
            G = named_group(rest)
            if G.n != n:
                raise GroupError(f"{rest} has degree {G.n}, not {n}")
            return SubgroupDescriptor("named", n, (rest,), G, f"named:{rest}")
        if head == "gens":
            text = Path(rest).read_text()
            G = _group_from_text(text, Path(rest).stem, n)
            if G.n != n:
                raise GroupError(f"{rest} has degree {G.n}, not {n}")
            return SubgroupDescriptor("gens", n, (rest,), G, f"gens:{rest}")
    except (ValueError, OSError) as exc:
        if isinstance(exc, GroupError):
            raise
        raise GroupError(f"bad group spec {spec!r}: {exc}") from None
    raise GroupError(f"unknown group spec {spec!r}")


def describe(G: PermGroup, name: str = "") -> SubgroupDescriptor:
    return SubgroupDescriptor("gens", G.n, (name or G.name,), G, name or G.name)


# ---------------------------------------------------------------- outcomes

@dataclass
class ClassificationOutcome:
    lam: Partition
    p: int
    group: str
    verdict: str
    cases: list = field(default_factory=list)
    reason: str = ""
    ground_truth: Optional[str] = None
    certificate: dict = field(default_factory=dict)

    @property
    def consistent(self) -> Optional[bool]:
        if self.ground_truth is None:
            return None
        absirr = self.ground_truth == "AbsIrr"
        if self.verdict == NECESSARILY_REDUCIBLE:
            return not absirr
        if self.verdict == IRREDUCIBLE:
            return absirr
        if self.verdict == REDUCIBLE:
            return not absirr
        return True

    def as_dict(self) -> dict:
        out = {"lambda": str(self.lam), "p": self.p, "group": self.group, "verdict": self.verdict,
               "cases": list(self.cases), "reason": self.reason, "ground_truth": self.ground_truth,
               "consistent": self.consistent}
        if self.certificate:
            out["certificate"] = self.certificate
        return out


def _is_one_dimensional(lam: Partition, p: int) -> bool:
    triv = Partition.of(lam.n)
    return lam == triv or lam == mullineux(triv, p)


def _alpha(n: int) -> Partition:
    return special_partition("alpha", n)


def _beta(n: int) -> Partition:
    return special_partition("beta", n)


# ---------------------------------------------------------------- Theorem A

def theorem_A_cases(lam, p: int, G: SubgroupDescriptor) -> ClassificationOutcome:
    """Which of the six necessary conditions for an irreducible restriction hold."""
    lam = _as_partition(lam)
    n = lam.n
    if n < 8:
        raise DomainError("the necessary-condition list needs n >= 8")
    if G.n != n:
        raise DomainError(f"group degree {G.n} differs from n = {n}")
    if _is_one_dimensional(lam, p):
        raise DomainError(f"D^{lam} is one-dimensional")
    f = G.flags
    cases = []
    if f["3-homogeneous"]:
        cases.append("A(i)")
    if f["2-transitive"] and min(lam.h, mullineux(lam, p).h) == 2:
        cases.append("A(ii)")
    if f["fixes_point"] and is_JS(lam, p):
        cases.append("A(iii)")
    if p == 2 and n % 2 == 0 and f["2-transitive"] and lam.h >= 3 and theorem_A_iv_condition(lam) is not None:
        cases.append("A(iv)")
    if p == 2 and n % 4 == 2 and lam == Partition.of(n - 1, 1) and f["swapped_bisection"]:
        cases.append("A(v)")
    if p == 2 and lam == _beta(n):
        cases.append("A(vi)")
    if cases:
        return ClassificationOutcome(lam, p, G.name, POSSIBLY_IRREDUCIBLE, cases)
    return ClassificationOutcome(lam, p, G.name, NECESSARILY_REDUCIBLE, [],
                                 reason="no case of the necessary-condition list applies")


# ---------------------------------------------------------------- exact families

def intransitive_product_decide(lam, p: int, k: int) -> bool:
    """D^lambda restricted to S_{n-k} x S_k, 2 <= k <= n/2: irreducible iff p = 2, n even, k odd, lambda = beta_n."""
    lam = _as_partition(lam)
    n = lam.n
    if not 2 <= k <= n // 2:
        raise DomainError("needs 2 <= k <= n/2")
    if _is_one_dimensional(lam, p):
        return True
    return p == 2 and n % 2 == 0 and k % 2 == 1 and lam == _beta(n)


def wreath_decide(lam, p: int, a: int, b: int) -> bool:
    """D^lambda restricted to S_a wr S_b (a, b > 1)."""
    lam = _as_partition(lam)
    n = lam.n
    if a * b != n or a < 2 or b < 2:
        raise DomainError("needs n = ab with a, b > 1")
    if _is_one_dimensional(lam, p):
        return True
    if p != 2:
        return False
    if lam == _beta(n) and a % 2 == 1:
        return True
    return n % 4 == 2 and lam == _alpha(n) and b == 2


_THEOREM_B_PRIMITIVE = {
    # degree: [(order, element orders or None, label)]
    5: [(20, None, "B(iii)(b)")],
    6: [(120, None, "B(iii)(c)")],
    10: [(720, (1, 2, 3, 4, 5, 6), "B(iii)(d)"), (720, (1, 2, 3, 4, 5, 8), "B(iii)(d)"),
         (1440, None, "B(iii)(d)")],
    12: [(95040, None, "B(iii)(e)")],
}


def _odd_union_of_orbits(G: PermGroup) -> bool:
    sizes = [len(o) for o in G.orbits()]
    reachable = {0}
    for s in sizes:
        reachable |= {r + s for r in reachable}
    n = G.n
    return any(0 < k < n and k % 2 == 1 and (n - k) % 2 == 1 for k in reachable)


def theorem_B_decide(n: int, G: SubgroupDescriptor) -> ClassificationOutcome:
    """Restriction of the basic spin module (p = 2) to G."""
    if n < 5:
        raise DomainError("needs n >= 5")
    lam = _beta(n)
    grp = G.group
    full = factorial(n)
    if grp.order == full:
        return ClassificationOutcome(lam, 2, G.name, IRREDUCIBLE, ["whole group"])
    if G.kind == "wreath" and min(G.params) > 1:
        a, b = G.params
        ok = a % 2 == 1
        return ClassificationOutcome(lam, 2, G.name, IRREDUCIBLE if ok else REDUCIBLE,
                                     ["B(i)"] if ok else [], reason="" if ok else "block size even")
    if G.kind in ("intransitive", "stab") or (G.kind == "young" and len(G.params) == 2):
        m, k = G.params
        ok = m % 2 == 1 and k % 2 == 1
        return ClassificationOutcome(lam, 2, G.name, IRREDUCIBLE if ok else REDUCIBLE,
                                     ["B(ii)"] if ok else [], reason="" if ok else "a part is even")
    f = G.flags
    if f["primitive"]:
        if grp.order * 2 == full:
            ok = n % 4 == 2
            return ClassificationOutcome(lam, 2, G.name, IRREDUCIBLE if ok else REDUCIBLE,
                                         ["B(iii)(a)"] if ok else [], reason="" if ok else "n not 2 mod 4")
        for order, spectrum, label in _THEOREM_B_PRIMITIVE.get(n, []):
            if grp.order == order and (spectrum is None or tuple(grp.element_orders()) == spectrum):
                return ClassificationOutcome(lam, 2, G.name, IRREDUCIBLE, [label])
        return ClassificationOutcome(lam, 2, G.name, REDUCIBLE, [], reason="primitive, not in the list")
    cases = []
    if f["transitive"]:
        if any(1 < len(B) < n and len(B) % 2 == 1 for B in grp.blocks_containing(1)):
            cases.append("B(i)")
    else:
        if _odd_union_of_orbits(grp):
            cases.append("B(ii)")
        odd_divisors = [a for a in range(3, n, 2) if n % a == 0 and n // a > 2]
        if odd_divisors:
            cases.append("B(i)?")      # block systems of intransitive groups are not searched
    if cases:
        return ClassificationOutcome(lam, 2, G.name, POSSIBLY_IRREDUCIBLE, cases)
    return ClassificationOutcome(lam, 2, G.name, NECESSARILY_REDUCIBLE, [],
                                 reason="no odd block system and no odd orbit split")


def theorem_TNat_decide(n: int, G: SubgroupDescriptor, seed: int = 0) -> tuple:
    """(verdict, certificate) for D^(n-1,1) restricted to G <= S_{n/2} wr S_2, p = 2."""
    if n % 4 != 2 or n < 6:
        raise DomainError("needs n >= 6 and n = 2 mod 4")
    a = n // 2
    grp = G.group
    W = wreath(a, 2)
    if grp.n != n or not grp.is_subgroup_of(W):
        raise DomainError(f"{G.name} is not inside wreath:{a}:2")
    cert = {"transitive": grp.is_transitive()}
    if not cert["transitive"]:
        cert["failed"] = "(i) intransitive"
        return False, cert
    GB, p1, p2 = base_intersection_projections(grp, a)
    D = irreducible(Partition.of(a - 1, 1), 2)
    for tag, P in (("projection1", p1), ("projection2", p2)):
        two = is_k_transitive(P, 2)
        irr = two and meataxe(restrict(D, P), seed=seed).kind == ABS_IRR
        cert[tag] = {"order": P.order, "2-transitive": two, "irreducible": irr}
        if not irr:
            cert["failed"] = f"(ii) {tag} " + ("not 2-transitive" if not two else "reducible")
            return False, cert
    one = trivial(symmetric(a), 2)
    left = restrict(box(D, one), GB)
    right = restrict(box(one, D), GB)
    iso = is_isomorphic(left, right, seed=seed)
    cert["box_modules_isomorphic"] = iso
    if iso:
        cert["failed"] = "(ii) the two box modules agree on G cap B"
        return False, cert
    return True, cert


# ---------------------------------------------------------------- ground truth

def ground_truth(lam, p: int, G: SubgroupDescriptor, seed: Optional[int] = None,
                 cap: Optional[int] = None) -> str:
    """AbsIrr or Red for D^lambda restricted to G, decided by the MeatAxe."""
    return ground_truth_detail(lam, p, G, seed, cap)[0]


def ground_truth_detail(lam, p: int, G: SubgroupDescriptor, seed: Optional[int] = None,
                        cap: Optional[int] = None) -> tuple:
    cfg = get_config()
    cap = cfg.dim_cap if cap is None else cap
    seed = cfg.seed if seed is None else seed
    lam = _as_partition(lam)
    if lam.n != G.n:
        raise DomainError(f"group degree {G.n} differs from n = {lam.n}")
    if hook_dim(lam) > cap:
        D = None
    else:
        D = irreducible(lam, p)
    if D is None or D.dim > cap:
        raise CapError(f"D^{lam} exceeds dimension cap {cap}")
    v = meataxe(restrict(D, G.group), seed=seed)
    note = "irreducible but not absolutely" if v.kind == IRR_NOT_ABS else ""
    return ("AbsIrr" if v.kind == ABS_IRR else "Red"), note, D.dim


# ---------------------------------------------------------------- combined classification

def classify(lam, p: int, G: SubgroupDescriptor, with_ground_truth: bool = False,
             seed: Optional[int] = None) -> ClassificationOutcome:
    """Every applicable decision for (lambda, G), merged into one outcome."""
    lam = _as_partition(lam)
    n = lam.n
    if not lam.n == G.n:
        raise DomainError(f"group degree {G.n} differs from n = {n}")
    from .partitions import is_p_regular
    if not is_p_regular(lam, p):
        raise DomainError(f"{lam} is not {p}-regular")
    seed = get_config().seed if seed is None else seed
    if _is_one_dimensional(lam, p):
        out = ClassificationOutcome(lam, p, G.name, IRREDUCIBLE, ["one-dimensional"])
    elif n >= 8:
        out = theorem_A_cases(lam, p, G)
    else:
        out = ClassificationOutcome(lam, p, G.name, POSSIBLY_IRREDUCIBLE, [],
                                    reason="n < 8: only the MeatAxe verdict applies")
    exact = _exact_verdict(lam, p, G, seed, out.certificate)
    if exact is not None and out.verdict != IRREDUCIBLE:
        verdict, label = exact
        out.cases = out.cases + [label]
        out.verdict = IRREDUCIBLE if verdict else REDUCIBLE
    if with_ground_truth:
        gt, note, _ = ground_truth_detail(lam, p, G, seed=seed)
        out.ground_truth = gt
        if note:
            out.certificate["meataxe_note"] = note
    return out


def _exact_verdict(lam: Partition, p: int, G: SubgroupDescriptor, seed: int, cert: dict):
    n = lam.n
    if p == 2 and n % 4 == 2 and n >= 6 and lam == _alpha(n) and G.group.is_subgroup_of(wreath(n // 2, 2)):
        ok, c = theorem_TNat_decide(n, G, seed=seed)
        cert["TNat"] = c
        return ok, "TNat"
    if G.kind in ("intransitive", "young") and len(G.params) == 2 and min(G.params) >= 2:
        return intransitive_product_decide(lam, p, min(G.params)), "intransitive iff"
    if G.kind == "wreath" and min(G.params) >= 2:
        a, b = G.params
        return wreath_decide(lam, p, a, b), "wreath iff"
    if p == 2 and lam == _beta(n) and n >= 5:
        b = theorem_B_decide(n, G)
        if b.verdict in (IRREDUCIBLE, REDUCIBLE) and "whole group" not in b.cases:
            return b.verdict == IRREDUCIBLE, "+".join(b.cases) or "B"
    return None


# ---------------------------------------------------------------- survey

FAMILIES = ("An", "stab", "young", "wreath")


def family_groups(n: int, families: Iterable[str] = FAMILIES) -> list:
    out, seen = [], set()
    for fam in families:
        fam = fam.strip()
        specs = []
        if fam in ("An", "A"):
            specs = ["An"]
        elif fam in ("stab", "Sn-1"):
            specs = ["stab"]
        elif fam in ("young", "intransitive"):
            specs = [f"intransitive:{n}:{k}" for k in range(2, n // 2 + 1)]
        elif fam == "wreath":
            specs = [f"wreath:{a}:{n // a}" for a in range(2, n) if n % a == 0 and n // a >= 2]
        elif fam in ("Sn",):
            specs = ["Sn"]
        else:
            specs = [fam]
        for s in specs:
            d = parse_group_spec(s, n)
            if d.spec not in seen:
                seen.add(d.spec)
                out.append(d)
    return out


def _cell_checks(lam: Partition, p: int, G: SubgroupDescriptor, gt: str, A: Optional[ClassificationOutcome]) -> dict:
    checks = {}
    n = lam.n
    absirr = gt == "AbsIrr"
    if A is not None:
        checks["theorem_A_sound"] = (not absirr) or A.verdict == POSSIBLY_IRREDUCIBLE
    if G.kind == "intransitive":
        k = min(G.params)
        if k >= 2:
            checks["intransitive_iff"] = intransitive_product_decide(lam, p, k) == absirr
    if G.kind == "wreath":
        a, b = G.params
        checks["wreath_iff"] = wreath_decide(lam, p, a, b) == absirr
    if p == 2 and lam == _beta(n) and G.kind in ("wreath", "intransitive", "stab"):
        checks["theorem_B"] = (theorem_B_decide(n, G).verdict == IRREDUCIBLE) == absirr
    return checks


def survey(n: int, p: int, families: Iterable[str] = FAMILIES, lam_filter=None,
           seed: Optional[int] = None, cap: Optional[int] = None, timing: bool = True,
           progress=None) -> dict:
    """Sweep p-regular lambda (1 < dim <= cap) against the families; per-cell errors are recorded."""
    cfg = get_config()
    seed = cfg.seed if seed is None else seed
    cap = cfg.dim_cap if cap is None else cap
    groups = family_groups(n, families)
    cells = []
    for lam in enumerate_p_regular(n, p):
        if lam_filter is not None and not lam_filter(lam):
            continue
        if _is_one_dimensional(lam, p):
            continue
        try:
            if hook_dim(lam) > cap or irreducible(lam, p).dim > cap:
                continue
        except CapError:
            continue
        for G in groups:
            t0 = time.perf_counter()
            cell = {"lambda": str(lam), "group": G.name}
            try:
                A = theorem_A_cases(lam, p, G) if n >= 8 else None
                cell["cases"] = list(A.cases) if A else []
                gt, note, _ = ground_truth_detail(lam, p, G, seed=seed, cap=cap)
                cell["ground_truth"] = gt
                if note:
                    cell["note"] = note
                checks = _cell_checks(lam, p, G, gt, A)
                cell["checks"] = checks
                cell["consistent"] = all(checks.values())
            except (CapError, DomainError, PartitionError, GroupError) as exc:
                cell.setdefault("cases", [])
                cell["ground_truth"] = None
                cell["consistent"] = None
                cell["error"] = f"{type(exc).__name__}: {exc}"
            cell["elapsed_ms"] = round((time.perf_counter() - t0) * 1000) if timing else 0
            cells.append(cell)
            if progress:
                progress(cell)
    return {
        "meta": {"version": __version__, "n": n, "p": p, "seed": seed,
                 "caps": {"dim": cap, "words": cfg.word_cap},
                 "families": [G.name for G in groups]},
        "cells": cells,
    }
