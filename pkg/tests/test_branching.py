from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from snmod.branching import (block_decomposition, contains_to_base, e_component, f_component,
                             james_two_row_multiplicity, m_k, perm_module_signature,
                             predicted_perm_factors, predicted_specht_factors,
                             restriction_end_dim, socle_label, two_row_label)
from snmod.meataxe import composition_factors, dominating_regular
from snmod.partitions import (Partition, PartitionError, addable_removable, e_tilde,
                              enumerate_p_regular, epsilon, gamma, is_JS, phi, residue_content, signature)
from snmod.reps import end_dim, hom_space
from snmod.specht import irreducible, specht
from snmod.verify import expected_factors, expected_hom


@st.composite
def regular(draw, max_n=7):
    p = draw(st.sampled_from([2, 3]))
    n = draw(st.integers(2, max_n))
    return draw(st.sampled_from(enumerate_p_regular(n, p))), p


@settings(max_examples=25)
@given(regular())
def test_block_components(lp):
    lam, p = lp
    D = irreducible(lam, p)
    B = block_decomposition(D)
    assert sum(B.dims().values()) == D.dim
    for i, U, E in B.components:
        assert (U.dim > 0) == (epsilon(lam, i, p) > 0)
        if E is not None:
            assert E.n == lam.n - 1
            assert end_dim(E) == epsilon(lam, i, p)


def test_trivial_module_has_one_component():
    B = block_decomposition(irreducible((5,), 3))
    nonzero = [(i, E) for i, U, E in B.components if U.dim]
    assert len(nonzero) == 1
    i, E = nonzero[0]
    assert i == (5 - 1) % 3 and E.dim == 1


def test_restriction_end_dim():
    assert restriction_end_dim((4, 1), 2) == 2
    for p in (2, 3):
        for lam in enumerate_p_regular(7, p):
            if is_JS(lam, p):
                assert restriction_end_dim(lam, p) == 1


@pytest.mark.parametrize("p", [2, 3])
def test_m1_is_sum_of_eps(p):
    for lam in enumerate_p_regular(7, p):
        assert m_k(lam, p, 1) == sum(epsilon(lam, i, p) for i in range(p))


@pytest.mark.parametrize("p", [2, 3])
def test_socle_label_is_good_node_removal(p):
    for n in range(2, 8):
        for lam in enumerate_p_regular(n, p):
            for i in range(p):
                if epsilon(lam, i, p):
                    assert socle_label(lam, i, p) == e_tilde(lam, i, p)
                else:
                    with pytest.raises(PartitionError):
                        socle_label(lam, i, p)


@pytest.mark.parametrize("p", [2, 3])
def test_hom_from_removed_node_only_for_good_node(p):
    # a normal node that is not good gives no map into e_i D (the socle is simple)
    for n in range(3, 8):
        for lam in enumerate_p_regular(n, p):
            for i in range(p):
                E = e_component(irreducible(lam, p), i)
                if E is None:
                    continue
                good = e_tilde(lam, i, p)
                for A in addable_removable(lam, i, p)[1]:
                    mu = lam.remove(A)
                    if not all(mu.parts.count(x) < p for x in mu.parts):
                        continue
                    assert (hom_space(irreducible(mu, p), E).dim > 0) == (mu == good)


def test_normal_but_not_good_example():
    lam, p = Partition.of(4, 1), 2
    normal = signature(lam, 1, p).normal
    assert len(normal) == 2
    E = e_component(irreducible(lam, p), 1)
    hits = [A for A in normal if hom_space(irreducible(lam.remove(A), p), E).dim]
    assert [lam.remove(A) for A in hits] == [e_tilde(lam, 1, p)]


def test_js_restriction_is_irreducible():
    lam, p = Partition.of(5, 3, 1), 2
    i = next(i for i in range(p) if epsilon(lam, i, p))
    E = e_component(irreducible(lam, p), i)
    assert composition_factors(E) == {e_tilde(lam, i, p): 1}


def test_f_component_example():
    D = irreducible((3, 1), 3)
    dims = [None if F is None else F.dim for F in (f_component(D, i) for i in range(3))]
    assert dims == [9, 6, None]
    assert composition_factors(f_component(D, 0)) == {Partition.of(4, 1): 2, Partition.of(3, 2): 1}


@settings(max_examples=20)
@given(regular(max_n=5))
def test_f_component_matches_phi(lp):
    lam, p = lp
    D = irreducible(lam, p)
    total = 0
    for i in range(p):
        F = f_component(D, i)
        assert (F is not None) == (phi(lam, i, p) > 0)
        if F is not None:
            total += F.dim
            assert end_dim(F) == phi(lam, i, p)
            want = tuple(a + b for a, b in zip(residue_content(lam, p), gamma(i, p)))
            assert all(residue_content(mu, p) == want for mu in composition_factors(F))
    assert total == (lam.n + 1) * D.dim


def test_contains_to_base():
    assert contains_to_base(7, 0, 2)
    assert contains_to_base(7, 3, 2) and contains_to_base(5, 1, 2) and not contains_to_base(5, 2, 2)
    assert not contains_to_base(3, 3, 2)


def test_two_row_multiplicity_examples():
    for n in (9, 13):
        assert james_two_row_multiplicity(n, 3, 1, 2) == 0
    for n in (7, 11):
        assert james_two_row_multiplicity(n, 3, 1, 2) == 1
    for k in range(4):
        assert james_two_row_multiplicity(10, k, k, 3) == 1
    with pytest.raises(PartitionError):
        james_two_row_multiplicity(6, 4, 1, 2)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [6, 7, 8, 9, 10])
def test_two_row_rule_matches_specht_factors(n, p):
    for k in range(4):
        if 2 * k > n:
            continue
        got = composition_factors(specht((n - k, k), p), candidates=dominating_regular((n - k, k), p))
        assert got == predicted_specht_factors(n, k, p)


def test_perm_signature_examples():
    sig = perm_module_signature(10, 2, 2)
    assert sig["factors"] == [["(10)", 3], ["(9,1)", 2], ["(8,2)", 1]]
    sig = perm_module_signature(9, 3, 2)
    assert sig["hom_in"][2] == 1
    assert perm_module_signature(9, 3, 1)["hom_in"][1] == 0
    m2 = Counter({l: m for l, m in perm_module_signature(9, 2, 2)["factors"]})
    m3 = Counter({l: m for l, m in perm_module_signature(9, 2, 3)["factors"]})
    assert m3 - m2 == Counter({"(6,3)": 1})


def test_perm_signature_schema():
    sig = perm_module_signature(8, 2, 2)
    assert set(sig) == {"n", "p", "k", "factors", "hom_in", "hom_out", "invariants_dim"}
    assert sig["invariants_dim"] == 1
    assert sig["factors"] == sorted(sig["factors"], key=lambda t: [int(x) for x in t[0][1:-1].split(",")], reverse=True)


def test_expected_tables_agree_with_the_rule():
    for p in (2, 3):
        for n in range(6, 30):
            for k in (1, 2, 3):
                want = expected_factors(n, p, k)
                if want is not None:
                    assert want == predicted_perm_factors(n, k, p), (n, p, k)


@pytest.mark.parametrize("n", [7, 8])
@pytest.mark.parametrize("p", [2, 3])
def test_hom_signatures_small(n, p):
    for k in (1, 2, 3):
        sig = perm_module_signature(n, p, k)
        hom = expected_hom(n, p, k)
        if hom is None:
            continue
        for j, (lo, hi) in hom.items():
            for v in (sig["hom_in"][j], sig["hom_out"][j]):
                assert v >= lo and (hi is None or v <= hi)


@pytest.mark.parametrize("p", [2, 3])
def test_removed_node_factor_multiplicity(p):
    # D^(lambda_A) occurs in e_i D iff A is i-normal, once more than the i-normal nodes above A
    for n in range(3, 8):
        for lam in enumerate_p_regular(n, p):
            for i in range(p):
                E = e_component(irreducible(lam, p), i)
                fac = composition_factors(E) if E is not None else Counter()
                normal = signature(lam, i, p).normal
                for A in addable_removable(lam, i, p)[1]:
                    mu = lam.remove(A)
                    if not all(mu.parts.count(x) < p for x in mu.parts):
                        continue
                    want = 1 + sum(1 for B in normal if B[0] < A[0]) if A in normal else 0
                    assert fac.get(mu, 0) == want, (lam, i, A)
