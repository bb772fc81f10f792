import json
from itertools import product

import pytest

from snmod.classifier import (IRREDUCIBLE, NECESSARILY_REDUCIBLE, POSSIBLY_IRREDUCIBLE, REDUCIBLE,
                              DomainError, classify, describe, family_groups, ground_truth,
                              intransitive_product_decide, named_group, parse_group_spec, survey,
                              theorem_A_cases, theorem_B_decide, theorem_TNat_decide, wreath_decide)
from snmod.meataxe import IRR_NOT_ABS, meataxe
from snmod.partitions import Partition
from snmod.perm_groups import GroupError, Permutation, group, wreath
from snmod.reps import end_dim, restrict
from snmod.specht import irreducible


def _affine_plane_group():
    # AGL(2,3) on the nine points of GF(3)^2, point (x, y) -> 3x + y + 1
    def perm(f):
        return Permutation.from_images([3 * a + b + 1 for a, b in (f(x, y) for x, y in product(range(3), repeat=2))])
    gens = [perm(lambda x, y: ((x + 1) % 3, y)),
            perm(lambda x, y: ((x + y) % 3, y)),
            perm(lambda x, y: (y, (2 * x) % 3)),
            perm(lambda x, y: ((2 * x) % 3, y))]
    return group(gens, n=9, name="AGL(2,3)")


def test_parse_group_specs():
    assert parse_group_spec("S6", 6).order == 720
    assert parse_group_spec("An", 6).order == 360
    assert parse_group_spec("stab", 6).order == 120
    assert parse_group_spec("young:2,2,2", 6).order == 8
    assert parse_group_spec("intransitive:7:3", 7).order == 144
    assert parse_group_spec("wreath:3:2", 6).order == 72
    assert parse_group_spec("named:pgl2_5", 6).order == 120


@pytest.mark.parametrize("spec,n", [("young:2,2", 5), ("intransitive:6:0", 6), ("wreath:2:2", 6),
                                    ("named:nonesuch", 6), ("named:pgl2_5", 7), ("frob", 6),
                                    ("wreath:x:2", 6), ("gens:/nonexistent/file", 6)])
def test_parse_group_spec_errors(spec, n):
    with pytest.raises(GroupError):
        parse_group_spec(spec, n)


def test_gens_file(tmp_path):
    f = tmp_path / "c5.txt"
    f.write_text("# cyclic\n(1,2,3,4,5)\n")
    G = parse_group_spec(f"gens:{f}", 5)
    assert G.order == 5 and G.flags["transitive"] and G.flags["primitive"]


def test_flags():
    f = parse_group_spec("wreath:3:2", 6).flags
    assert f["transitive"] and not f["primitive"] and not f["2-transitive"] and f["swapped_bisection"]
    f = parse_group_spec("An", 8).flags
    assert f["3-homogeneous"] and f["2-transitive"] and not f["fixes_point"]
    assert parse_group_spec("stab", 8).flags["fixes_point"]


@pytest.mark.parametrize("name,n,order", [("agl1_5", 5, 20), ("pgl2_5", 6, 120), ("s6_on_10", 10, 720),
                                          ("m10", 10, 720), ("pgl2_9", 10, 720), ("psl2_9", 10, 360),
                                          ("pgammal2_9", 10, 1440), ("m12", 12, 95040)])
def test_named_groups(name, n, order):
    G = named_group(name)
    assert G.n == n and G.order == order and G.is_primitive()


def test_theorem_A_examples():
    assert theorem_A_cases((5, 4, 1), 2, parse_group_spec("intransitive:10:2", 10)).verdict == NECESSARILY_REDUCIBLE
    out = theorem_A_cases((8, 1), 3, parse_group_spec("An", 9))
    assert out.verdict == POSSIBLY_IRREDUCIBLE and "A(i)" in out.cases
    out = theorem_A_cases((6, 4), 2, parse_group_spec("wreath:5:2", 10))
    assert "A(vi)" in out.cases
    out = theorem_A_cases((9, 1), 2, parse_group_spec("wreath:5:2", 10))
    assert "A(v)" in out.cases


def test_theorem_A_affine_plane():
    G = describe(_affine_plane_group())
    assert G.order == 432
    assert G.flags["2-transitive"] and not G.flags["3-homogeneous"]
    assert theorem_A_cases((5, 3, 1), 3, G).verdict == NECESSARILY_REDUCIBLE
    assert ground_truth((5, 3, 1), 3, G) == "Red"


def test_theorem_A_domain():
    with pytest.raises(DomainError):
        theorem_A_cases((5, 1), 2, parse_group_spec("An", 6))
    with pytest.raises(DomainError):
        theorem_A_cases((8,), 2, parse_group_spec("An", 8))


def test_theorem_B_pins():
    assert theorem_B_decide(6, parse_group_spec("named:pgl2_5", 6)).cases == ["B(iii)(c)"]
    assert theorem_B_decide(6, parse_group_spec("intransitive:6:3", 6)).verdict == IRREDUCIBLE
    assert theorem_B_decide(8, parse_group_spec("An", 8)).verdict == REDUCIBLE
    m12 = theorem_B_decide(12, parse_group_spec("named:m12", 12))
    assert m12.verdict == IRREDUCIBLE and m12.cases == ["B(iii)(e)"]
    with pytest.raises(DomainError):
        theorem_B_decide(4, parse_group_spec("S4", 4))


def test_basic_spin_on_m12_is_not_absolutely_irreducible():
    # the listed M12 case holds over GF(4) only: End has dimension 2 over GF(2)
    D = irreducible((7, 5), 2)
    R = restrict(D, named_group("m12"))
    assert meataxe(R).kind == IRR_NOT_ABS
    assert end_dim(R) == 2


@pytest.mark.parametrize("spec", ["wreath:3:2", "wreath:5:2"])
def test_theorem_B_wreath_matches_meataxe(spec):
    G = parse_group_spec(spec, int(spec.split(":")[1]) * 2)
    lam = Partition.of(*([G.n // 2 + 1, G.n // 2 - 1]))
    assert (theorem_B_decide(G.n, G).verdict == IRREDUCIBLE) == (ground_truth(lam, 2, G) == "AbsIrr")


def test_exact_families():
    assert intransitive_product_decide((4, 2), 2, 3)
    assert not intransitive_product_decide((4, 2), 2, 2)
    assert not intransitive_product_decide((5, 1), 3, 2)
    assert wreath_decide((5, 1), 2, 3, 2)
    assert not wreath_decide((5, 1), 3, 3, 2)
    with pytest.raises(DomainError):
        wreath_decide((5, 1), 2, 6, 1)


def test_tnat():
    W = parse_group_spec("wreath:3:2", 6)
    ok, cert = theorem_TNat_decide(6, W)
    assert ok and cert["transitive"]
    ok, cert = theorem_TNat_decide(6, parse_group_spec("young:3,3", 6))
    assert not ok and cert["failed"].startswith("(i)")
    even = [g for g in wreath(3, 2).elements() if g.sign() == 1]
    H = describe(group(even, n=6), "wreath cap A6")
    assert H.order == 36
    ok, _ = theorem_TNat_decide(6, H)
    assert ok == (ground_truth((5, 1), 2, H) == "AbsIrr")
    with pytest.raises(DomainError):
        theorem_TNat_decide(8, parse_group_spec("wreath:4:2", 8))
    with pytest.raises(DomainError):
        theorem_TNat_decide(6, parse_group_spec("An", 6))


def test_ground_truth():
    assert ground_truth((5, 1), 2, parse_group_spec("wreath:3:2", 6)) == "AbsIrr"
    assert ground_truth((3, 2, 1), 2, parse_group_spec("stab", 6)) == "Red"
    assert ground_truth((4, 2), 2, parse_group_spec("stab", 6)) == "AbsIrr"


def test_classify():
    out = classify((9, 1), 2, parse_group_spec("wreath:5:2", 10), with_ground_truth=True)
    assert out.cases == ["A(v)", "TNat"] and out.verdict == IRREDUCIBLE
    assert out.ground_truth == "AbsIrr" and out.consistent
    d = out.as_dict()
    assert d["certificate"]["TNat"]["transitive"]
    out = classify((6, 4), 2, parse_group_spec("wreath:5:2", 10))
    assert out.cases == ["A(vi)", "wreath iff"] and out.verdict == IRREDUCIBLE
    assert classify((6,), 3, parse_group_spec("An", 6)).cases == ["one-dimensional"]
    with pytest.raises(DomainError):
        classify((2, 2, 2), 2, parse_group_spec("An", 6))
    with pytest.raises(DomainError):
        classify((4, 2), 2, parse_group_spec("An", 7))


def test_family_groups():
    names = [G.name for G in family_groups(8)]
    assert names == ["A8", "S7", "intransitive:8:2", "intransitive:8:3", "intransitive:8:4",
                     "wreath:2:4", "wreath:4:2"]


def test_survey_schema_and_determinism():
    a = survey(8, 2, timing=False)
    b = survey(8, 2, timing=False)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert set(a) == {"meta", "cells"} and a["cells"]
    for cell in a["cells"]:
        assert {"lambda", "group", "cases", "ground_truth", "consistent", "elapsed_ms"} <= set(cell)
        assert cell["consistent"] is not False
