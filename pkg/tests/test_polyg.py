from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chordlab.polyg import PolyG, RatG, poly_gcd

coeffs = st.lists(st.fractions(max_denominator=12).map(lambda x: x.limit_denominator(12)), max_size=5)
polys = coeffs.map(PolyG)
points = st.integers(-6, 6)


def test_strip_and_degree():
    assert PolyG([1, 2, 0, 0]).coeffs == (1, 2)
    assert PolyG([]).degree == -1
    assert PolyG([0, 0, 3]).degree == 2
    assert not PolyG([0, 0])


def test_expand_two_g_times_two_g_minus_two():
    p = PolyG.linear(2, 0) * PolyG.linear(2, -2)
    assert p.to_strings() == ["0", "-4", "4"]
    assert str(p) == "4*g^2 - 4*g"


def test_from_strings_roundtrip():
    p = PolyG([Fraction(-1, 3), 0, 5])
    assert PolyG.from_strings(p.to_strings()) == p
    assert p.to_strings() == ["-1/3", "0", "5"]


def test_divmod_and_exact_div():
    a = PolyG.product([PolyG.linear(2, -2), PolyG.linear(2, 1), PolyG.g()])
    q = a.exact_div(PolyG.linear(2, 1))
    assert q == PolyG.linear(2, -2) * PolyG.g()
    with pytest.raises(ArithmeticError):
        a.exact_div(PolyG.linear(1, 7))


def test_gcd_is_monic():
    a = PolyG.linear(2, -2) * PolyG.linear(2, 4)
    b = PolyG.linear(4, -4) * PolyG.linear(1, 9)
    assert poly_gcd(a, b) == PolyG.linear(1, -1)


def test_ratg_keeps_two_g_minus_two_literal():
    r = RatG(-6, PolyG.linear(2, -2))
    assert str(r) == "(-6)/(2*g - 2)"
    assert r == RatG(-3, PolyG.linear(1, -1))
    assert r(2) == -3
    assert RatG(PolyG.linear(2, -2), PolyG.linear(2, -2)) == 1


def test_ratg_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        RatG(1, 0)
    with pytest.raises(ZeroDivisionError):
        RatG(1, PolyG.linear(2, -2))(1)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a


@given(polys, polys, points)
def test_evaluation_is_a_ring_morphism(a, b, g):
    assert (a * b)(g) == a(g) * b(g)
    assert (a + b)(g) == a(g) + b(g)


@given(polys, polys.filter(bool))
def test_division_identity(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(polys, polys.filter(bool), polys, polys.filter(bool), points)
def test_ratg_field_ops_commute_with_evaluation(a, b, c, d, g):
    x, y = RatG(a, b), RatG(c, d)
    if b(g) == 0 or d(g) == 0:
        return
    assert (x + y)(g) == x(g) + y(g)
    assert (x * y)(g) == x(g) * y(g)
