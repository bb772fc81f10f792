from itertools import combinations, permutations
from math import factorial

import pytest
from hypothesis import given, strategies as st

from snmod.classifier import named_group
from snmod.perm_groups import (GroupError, Permutation, action_on, adjacent_word, all_subgroups,
                               alternating, base_intersection_projections, coset_reps, group,
                               intransitive, is_k_homogeneous, is_k_transitive,
                               orbit_count_k_subsets, parse_permutation, swapped_bisection,
                               symmetric, wreath, young_subgroup)


@st.composite
def perms(draw, n):
    return Permutation.from_images(draw(st.permutations(list(range(1, n + 1)))))


def test_parse_and_compose():
    g = parse_permutation("(1,2)(3,4,5)", 5)
    assert g(1) == 2 and g(3) == 4 and g(5) == 3
    assert str(g) == "(1,2)(3,4,5)"
    a, b = parse_permutation("(1,2)", 3), parse_permutation("(2,3)", 3)
    assert (a * b)(2) == a(b(2)) == 3 and (a * b)(3) == 1
    assert parse_permutation("()", 4).is_identity()
    with pytest.raises(GroupError):
        parse_permutation("(1,2", 3)
    with pytest.raises(GroupError):
        parse_permutation("(1,9)", 3)


@given(st.data(), st.integers(1, 8))
def test_permutation_algebra(data, n):
    g, h = data.draw(perms(n)), data.draw(perms(n))
    assert (g * g.inverse()).is_identity()
    assert (g * h).sign() == g.sign() * h.sign()
    word = adjacent_word(g)
    prod = Permutation.identity(n)
    for i in word:
        prod = prod * Permutation.transposition(n, i, i + 1)
    assert prod == g
    assert len(word) == sum(1 for a, b in combinations(range(n), 2) if g.img[a] > g.img[b])


def test_orders():
    n = 7
    assert group([Permutation.from_cycles(n, [(1, 2)]), Permutation.from_cycles(n, [tuple(range(1, n + 1))])]).order == factorial(n)
    assert group([], 5).order == 1
    assert wreath(3, 2).order == 72
    assert wreath(2, 3).order == 48
    assert young_subgroup([6]).order == symmetric(6).order
    assert intransitive(6, 3).order == 36
    assert alternating(8).order == factorial(8) // 2


def test_membership():
    W = wreath(3, 2)
    assert parse_permutation("(1,4)(2,5)(3,6)", 6) in W
    assert parse_permutation("(1,4)", 6) not in W
    assert W.is_subgroup_of(symmetric(6)) and not symmetric(6).is_subgroup_of(W)


@pytest.mark.parametrize("name,degree,order", [
    ("agl1_5", 5, 20), ("pgl2_5", 6, 120), ("psl2_9", 10, 360), ("s6_on_10", 10, 720),
    ("m10", 10, 720), ("pgl2_9", 10, 720), ("pgammal2_9", 10, 1440), ("m12", 12, 95040),
])
def test_shipped_groups(name, degree, order):
    G = named_group(name)
    assert (G.n, G.order) == (degree, order)
    assert G.is_primitive()


def test_m10_family_is_told_apart_by_element_orders():
    spectra = {name: sorted(set(named_group(name).element_orders())) for name in ("s6_on_10", "m10", "pgl2_9")}
    assert spectra["s6_on_10"] == [1, 2, 3, 4, 5, 6]
    assert spectra["m10"] == [1, 2, 3, 4, 5, 8]
    assert 10 in spectra["pgl2_9"]


def _orbits_by_enumeration(G, k):
    elts = G.elements()
    seen, count = set(), 0
    for J in combinations(range(1, G.n + 1), k):
        if J in seen:
            continue
        count += 1
        for g in elts:
            seen.add(tuple(sorted(g(x) for x in J)))
    return count


def test_orbit_counts():
    for k in range(4):
        assert orbit_count_k_subsets(symmetric(7), k) == 1
    assert orbit_count_k_subsets(wreath(3, 2), 2) == 2
    for G in (wreath(3, 2), intransitive(7, 2), alternating(5), named_group("agl1_5")):
        for k in range(G.n // 2 + 1):
            assert orbit_count_k_subsets(G, k) == _orbits_by_enumeration(G, k)


def test_burnside():
    G = wreath(2, 3)
    elts = G.elements()
    for k in (1, 2, 3):
        fixed = sum(sum(1 for J in combinations(range(1, 7), k) if {g(x) for x in J} == set(J)) for g in elts)
        assert fixed == orbit_count_k_subsets(G, k) * len(elts)


def test_transitivity_predicates():
    for k in range(1, 5):
        assert is_k_transitive(symmetric(5), k)
    for n in (6, 10):
        W = wreath(n // 2, 2)
        assert W.is_transitive() and not is_k_homogeneous(W, 2)
    assert is_k_transitive(alternating(4), 2)
    assert not is_k_transitive(named_group("agl1_5"), 3) and is_k_transitive(named_group("agl1_5"), 2)


def test_ordered_pairs_agree_with_enumeration():
    G = alternating(4)
    pairs = {(g(1), g(2)) for g in G.elements()}
    assert len(pairs) == 12


def test_coset_reps():
    assert [g.is_identity() for g in coset_reps(symmetric(4), symmetric(4))] == [True]
    S3 = symmetric(3)
    H = group([Permutation.transposition(3, 1, 2)], 3)
    reps = coset_reps(S3, H)
    assert len(reps) == 3
    assert len({frozenset(r * h for h in H.elements()) for r in reps}) == 3
    assert len(coset_reps(symmetric(6), wreath(3, 2))) == 10


def test_base_projections():
    W = wreath(3, 2)
    GB, p1, p2 = base_intersection_projections(W, 3)
    assert GB.order == 36 and p1.order == p2.order == 6
    B = intransitive(6, 3)
    GB, _, _ = base_intersection_projections(B, 3)
    assert GB.order == B.order
    G = group([parse_permutation("(1,4)(2,5)(3,6)", 6), parse_permutation("(1,2,3)", 6)], 6)
    GB, p1, p2 = base_intersection_projections(G, 3)
    base = [g for g in G.elements() if g(1) <= 3]
    assert GB.order == len(base)
    assert {g.img[:3] for g in base} == {g.img for g in p1.elements()}
    assert {tuple(x - 3 for x in g.img[3:]) for g in base} == {g.img for g in p2.elements()}
    with pytest.raises(GroupError):
        base_intersection_projections(symmetric(6), 3)


def test_swapped_bisection():
    assert swapped_bisection(wreath(5, 2)) is not None
    assert swapped_bisection(wreath(3, 2)) is not None
    for G in (wreath(2, 4), alternating(10), intransitive(10, 5), young_subgroup([2] * 5)):
        assert swapped_bisection(G) is None


def test_action_on_orbit():
    G = intransitive(5, 2)
    A = action_on(G, [4, 5])
    assert A.n == 2 and A.order == 2


def test_subgroups_of_small_wreath():
    subs = all_subgroups(wreath(3, 2))
    assert len(subs) == 112
    orders = {H.order for H in subs}
    assert 1 in orders and 72 in orders
    assert all(72 % H.order == 0 for H in subs)
    assert sum(1 for H in subs if swapped_bisection(H) is not None) == 52
