import numpy as np
from hypothesis import given, strategies as st

from snmod.polyfp import degree, low_degree_factors, monic, pdivmod, pgcd, pmul, trim


@st.composite
def polys(draw, p, max_deg=6):
    coeffs = draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=max_deg + 1))
    return trim(np.array(coeffs, dtype=np.int64))


@given(st.data(), st.sampled_from([2, 3, 5]))
def test_division_identity(data, p):
    f = data.draw(polys(p))
    g = data.draw(polys(p))
    if degree(g) < 0:
        return
    q, r = pdivmod(f, g, p)
    assert degree(r) < degree(g)
    back = trim((np.pad(pmul(q, g, p), (0, 20))[:20] + np.pad(r, (0, 20))[:20]) % p)
    assert np.array_equal(back, trim(f % p))


@given(st.data(), st.sampled_from([2, 3]))
def test_gcd_divides_both(data, p):
    f, g = data.draw(polys(p)), data.draw(polys(p))
    if degree(f) < 0 or degree(g) < 0:
        return
    d = pgcd(f, g, p)
    assert degree(pdivmod(f, d, p)[1]) < 0 and degree(pdivmod(g, d, p)[1]) < 0


def test_low_degree_factors_of_a_product():
    p = 3
    lin = np.array([1, 1])             # 1 + x
    quad = np.array([1, 0, 1])         # 1 + x^2, irreducible mod 3
    f = pmul(pmul(lin, quad, p), lin, p)
    rng = np.random.default_rng(0)
    facs = [tuple(monic(g, p)) for g in low_degree_factors(f, p, 4, rng)]
    assert tuple(monic(lin, p)) in facs and tuple(monic(quad, p)) in facs
