from fractions import Fraction

import pytest
from hypothesis import given, reject, settings, strategies as st

from canyonlab.errors import ExtensionTooLarge
from canyonlab.poly import derivative_x, parse, relative, substitute
from canyonlab.polygon import lower_hull
from canyonlab.series import PuiseuxSeries
from canyonlab.solver import expand_along, face_polynomial, puiseux_roots

from oracles import reconstruction_remainder

E1 = "x^4 + x^3*y^3 + y^12 + t*x^2*y^7"


def test_polar_roots_first_example():
    t = Fraction(1, 2)
    fx = derivative_x(parse(E1, {"t": t}))
    b = puiseux_roots(fx, 6)
    assert b.degree == 3 and b.count() == 3
    lead = {str(s.truncate(5)) for s, _ in b.all_members()}
    # gamma_0 = 0, gamma_+ = -(2/3) t y^4 + ..., gamma_- = -(3/4) y^3 + (2/3) t y^4 + ...
    assert lead == {"0", "-1/3*y^4 + O(y^5)", "-3/4*y^3 + 1/3*y^4 + O(y^5)"}


def test_polar_roots_second_example_special_fibre():
    b = puiseux_roots(derivative_x(parse("x^4 + x^2*y^7 + y^12")), 8)
    sizes = sorted(cls.size for cls, _ in b.roots)
    assert sizes == [1, 2]
    (xi_cls,) = [cls for cls, _ in b.roots if cls.size == 2]
    xi = xi_cls.representative.lc
    assert xi_cls.representative.ord() == Fraction(7, 2)
    assert xi * xi == Fraction(-1, 2)
    assert b.tower.degree == 2


def test_linear_factors():
    b = puiseux_roots(parse("x^2 - y^2"), 4)
    assert sorted(str(s) for s, _ in b.all_members()) == ["-y", "y"]


def test_multiplicities_are_kept():
    b = puiseux_roots(parse("(x^2 - y^3)^2*(x - y)"), 6)
    assert b.degree == 5
    assert sorted(m * cls.size for cls, m in b.roots) == [1, 4]


def test_face_polynomial_first_example():
    F = relative(derivative_x(parse(E1, {"t": Fraction(1, 2)})), PuiseuxSeries.zero())
    np = lower_hull(F.dots())
    e3 = np.edge_with_coslope(3)
    P = face_polynomial(F, e3)
    # 4 Z^3 + 3 Z^2 on the edge, i.e. 3 + 4 Z after removing Z^2
    assert [c.to_rational() for c in P.coefficients] == [3, 4]


def test_face_polynomial_second_example():
    F = relative(derivative_x(parse("x^4 + x^2*y^7 + y^12")), PuiseuxSeries.zero())
    e = lower_hull(F.dots()).edge_with_coslope(Fraction(7, 2))
    P = face_polynomial(F, e)
    assert [c.to_rational() for c in P.coefficients] == [2, 0, 4]


def test_face_polynomial_single_dot():
    F = relative(parse("x"), PuiseuxSeries.zero())
    assert lower_hull(F.dots()).edges == ()


def test_expand_along_first_example():
    t = Fraction(1, 2)
    fx = derivative_x(parse(E1, {"t": t}))
    gm = expand_along(fx, PuiseuxSeries([(3, Fraction(-3, 4))], trunc=4), 7)
    assert gm.truncate(5) == PuiseuxSeries([(3, Fraction(-3, 4)), (4, Fraction(2, 3) * t)], 5)
    assert gm.trunc >= 7
    assert substitute(fx, gm).ord_bound() >= 7
    gp = expand_along(fx, PuiseuxSeries([(4, Fraction(-1, 3))], trunc=5), 6)
    assert gp.truncate(5) == PuiseuxSeries([(4, Fraction(-1, 3))], 5)


def test_expand_polynomial_root_terminates():
    s = expand_along(parse("x - y"), PuiseuxSeries([(1, 1)], trunc=2), 50)
    assert s == PuiseuxSeries([(1, 1)])


@pytest.mark.parametrize("text", ["x^4 + x^3*y^3 + y^12 + 1/2*x^2*y^7",
                                  "x^4 + x^2*y^7 + y^12", "x^3 + x*y^5 + y^9",
                                  "(x^2 - y^3)^2*(x - y)", "x^5 + x^6 + y^7"])
def test_reconstruction_and_substitution(text):
    f = parse(text)
    b = puiseux_roots(f, 10)
    assert b.count() == b.degree
    rem = reconstruction_remainder(f, b)
    assert all(not c.terms for c in rem.values())
    for s, _ in b.all_members():
        assert not substitute(f, s).terms


monomials = st.tuples(st.integers(1, 3), st.integers(1, 8),
                      st.fractions(min_value=-3, max_value=3, max_denominator=2).filter(bool))


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 4), st.integers(3, 9), st.lists(monomials, max_size=2))
def test_reconstruction_property(m, K, extra):
    terms = [f"x^{m}", f"y^{K}"] + [f"({c})*x^{i}*y^{j}" for i, j, c in extra if i < m]
    f = parse(" + ".join(terms))
    try:
        b = puiseux_roots(f, 8, max_degree=12)
    except ExtensionTooLarge:
        reject()  # e.g. x^4 + x*y^3 + y^4 splits only over a degree-24 field
    assert b.count() == b.degree == m
    rem = reconstruction_remainder(f, b)
    assert all(not c.terms for c in rem.values())
