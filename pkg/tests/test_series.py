from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from canyonlab.arith import QQ, adjoin_root
from canyonlab.errors import SameArc, TruncationTooLow
from canyonlab.series import INF, PuiseuxSeries, contact_order, conjugates, ord, render

XI_TOWER, XI = adjoin_root(QQ, [Fraction(1, 2), 0, 1])
t = Fraction(1, 2)


def S(*terms, trunc=INF):
    return PuiseuxSeries([(Fraction(e), c) for e, c in terms], trunc)


def test_ord_of_gamma_minus():
    assert ord(S((3, Fraction(-3, 4)), (4, Fraction(2, 3) * t))) == 3


def test_ord_zero_series_is_infinite():
    assert ord(PuiseuxSeries.zero()) == INF


def test_ord_of_xi_root():
    assert ord(S((Fraction(7, 2), XI))) == Fraction(7, 2)


def test_cancellation_gives_zero():
    assert (S((3, 1)) + S((3, -1))).is_zero()


def test_monomial_product():
    a = S((3, Fraction(-3, 4)))
    assert a * a == S((6, Fraction(9, 16)))


def test_binomial_square():
    assert S((1, 1), (2, 1)) ** 2 == S((2, 1), (3, 2), (4, 1))


def test_truncation_propagates_through_product():
    a = S((1, 1), trunc=5)
    b = S((2, 1), trunc=6)
    p = a * b
    assert p.trunc == 7  # min(5 + 2, 6 + 1)
    assert p.terms == ((Fraction(3), QQ.one()),)


def test_coefficient_beyond_truncation_raises():
    with pytest.raises(TruncationTooLow):
        S((1, 1), trunc=3).coefficient(4)


def test_conjugates_of_integral_series():
    _, cs = conjugates(S((2, 1)))
    assert cs == [S((2, 1))]


def test_conjugates_of_xi_root():
    _, cs = conjugates(S((Fraction(7, 2), XI)))
    assert cs == [S((Fraction(7, 2), XI)), S((Fraction(7, 2), -XI))]


def test_conjugates_of_cube_root_series():
    s = S((Fraction(1, 3), 1), (Fraction(2, 3), 1))
    tower, cs = conjugates(s)
    assert len(cs) == 3
    eps = cs[1].coefficient(Fraction(1, 3))
    assert not (eps - 1).is_zero() and (eps ** 3 - 1).is_zero()
    for k, c in enumerate(cs):
        assert c.coefficient(Fraction(1, 3)) == eps ** k
        assert c.coefficient(Fraction(2, 3)) == eps ** (2 * k)


def test_contact_in_first_example():
    gamma_minus = S((3, Fraction(-3, 4)), (4, Fraction(2, 3) * t))
    assert contact_order(gamma_minus, PuiseuxSeries.zero()) == 3


def test_contact_orders():
    assert contact_order(S((1, 1)), S((2, 1))) == 1
    a = S((Fraction(7, 2), XI))
    b = S((Fraction(7, 2), XI), (5, 1))
    assert contact_order(a, b) == 5


def test_contact_of_identical_arcs():
    with pytest.raises(SameArc):
        contact_order(S((2, 1)), S((2, 1)))


def test_contact_needs_certified_difference():
    with pytest.raises(TruncationTooLow):
        contact_order(S((2, 1), trunc=4), S((2, 1), trunc=5))


def test_render():
    assert render(S((3, Fraction(-3, 4)), (4, Fraction(1, 3)), trunc=6)) == "-3/4*y^3 + 1/3*y^4 + O(y^6)"


exps = st.fractions(min_value=0, max_value=8, max_denominator=4)
coefs = st.fractions(min_value=-20, max_value=20, max_denominator=6).filter(bool)
series = st.lists(st.tuples(exps, coefs), max_size=5).map(
    lambda ts: PuiseuxSeries(list({e: c for e, c in ts}.items())))


@settings(max_examples=150, deadline=None)
@given(series, series, series)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@settings(max_examples=150, deadline=None)
@given(series, series)
def test_ord_of_product_is_additive(a, b):
    if a.is_zero() or b.is_zero():
        assert (a * b).is_zero()
    else:
        assert ord(a * b) == ord(a) + ord(b)


@settings(max_examples=100, deadline=None)
@given(series, st.integers(min_value=0, max_value=4))
def test_power_is_repeated_product(a, n):
    p = PuiseuxSeries.monomial(QQ.one(), 0)
    for _ in range(n):
        p = p * a
    assert a ** n == p


@settings(max_examples=100, deadline=None)
@given(series, st.fractions(min_value=0, max_value=10, max_denominator=4))
def test_truncate_keeps_known_part(a, cut):
    b = a.truncate(cut)
    assert all(e < cut for e, _ in b.terms)
    assert (a - b).ord_bound() >= min(cut, ord(a)) or (a - b).is_zero()
