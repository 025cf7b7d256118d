from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaudin.polynomials import (
    Poly,
    falling_product,
    newton_interpolate,
    poly_det,
    poly_gcd,
    poly_lcm,
)

F = Fraction


def P(*coeffs):
    return Poly([F(c) for c in coeffs])


def test_multiplication_example():
    assert P(1, 0, 1) * P(-1, 1) == P(-1, 1, -1, 1)  # (u^2+1)(u-1)


def test_derivative_example():
    assert P(0, 0, 0, 1).derivative() == P(0, 0, 3)


def test_gcd_example():
    assert poly_gcd(P(-1, 0, 1), P(1, -2, 1)) == P(-1, 1)


def test_lcm():
    a, b = P(-1, 1) * P(1, 1), P(-1, 1) * P(2, 1)
    assert poly_lcm(a, b) == (P(-1, 1) * P(1, 1) * P(2, 1)).monic()


def test_divmod_exactness():
    num = P(2, 3, 1) * P(-5, 1) + P(7)
    q, r = num.divmod(P(-5, 1))
    assert q == P(2, 3, 1)
    assert r == P(7)
    with pytest.raises(ValueError):
        num.exact_div(P(-5, 1))


def test_shift_and_taylor():
    p = P(0, 0, 1)  # u^2
    assert p.shifted(F(1)) == P(1, 2, 1)
    assert p.taylor_at(F(3), 4) == [F(9), F(6), F(1), F(0)]


def test_evaluate_horner():
    p = P(1, -2, 1)
    assert p(F(3)) == F(4)
    assert Poly()(F(5)) == 0


def test_interpolation_roundtrip():
    pts = [F(0), F(1), F(2), F(3)]
    p = P(2, -1, 0, 1)
    q = newton_interpolate(pts, [p(x) for x in pts])
    assert q == p


def test_poly_det_matches_expansion():
    m = [[P(1, 1), P(0, 1)], [P(2), P(1)]]
    assert poly_det(m) == P(1, 1) * P(1) - P(0, 1) * P(2)


def test_falling_product():
    # a(a-1)(a-2)
    assert falling_product(3) == P(0, 2, -3, 1)


small_fracs = st.integers(-8, 8).map(F)
polys = st.lists(small_fracs, min_size=0, max_size=5).map(Poly)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_divmod_invariant(a, b):
    if b.is_zero():
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_gcd_divides(a, b):
    if a.is_zero() and b.is_zero():
        return
    g = poly_gcd(a, b)
    for p in (a, b):
        if not p.is_zero():
            assert (p % g).is_zero()
