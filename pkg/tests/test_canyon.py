import random
from fractions import Fraction
from functools import lru_cache

import pytest

from canyonlab.canyon import (analyze, definitional_degree, gradient_degree, polar_data,
                              polar_multiplicity)
from canyonlab.poly import parse
from canyonlab.polygon import Dot, lower_hull
from canyonlab.series import PuiseuxSeries

E1 = "x^4 + x^3*y^3 + y^12 + t*x^2*y^7"
E2 = "x^4 + y^12 + t*x^3*y^3 + (1-t)*x^2*y^7"


@lru_cache(maxsize=None)
def an(text, t=None):
    params = {} if t is None else {"t": Fraction(t)}
    return analyze(parse(text, params), 32)


def polygon(C):
    return str(C.aug)


def conv(*pts):
    """The convex set spanned by ``pts`` (plus the quadrant), rendered by its vertices."""
    return str(lower_hull([Dot(m, Fraction(q)) for m, q in pts]))


def test_gradient_degree_first_example():
    f = parse(E1, {"t": Fraction(1, 2)})
    assert gradient_degree(f, PuiseuxSeries.zero()) == 4
    (gm,) = [C for C in an(E1, "1/2").canyons if C.d == 5]
    assert gradient_degree(f, gm.reference.series) == 5


def test_gradient_degree_cusp_against_definition():
    f = parse("x^2 + y^3")
    assert gradient_degree(f, PuiseuxSeries.zero()) == 2
    assert definitional_degree(f, PuiseuxSeries.zero(), random.Random(1)) == 2


@pytest.mark.parametrize("t", ["1/2", "1/3"])
def test_canyons_first_example(t):
    a = an(E1, t)
    assert sorted(C.d for C in a.canyons) == [4, 5]
    by_d = {C.d: C for C in a.canyons}
    assert {C.h for C in a.canyons} == {12}
    assert polygon(by_d[4]) == "Conv{(0,11),(2,3),(3,0)}"
    assert polygon(by_d[5]) == "Conv{(0,11),(1,6),(3,0)}"
    assert polar_multiplicity(by_d[4]) == 2 and polar_multiplicity(by_d[5]) == 1
    assert len(by_d[4].members) == 2
    assert str(by_d[4].a) == "1"
    assert a.contacts[(0, 1)] == 3


def test_second_example_generic():
    a = an(E2, "1/2")
    by_d = {C.d: C for C in a.canyons}
    assert sorted(by_d) == [4, 5]
    assert polygon(by_d[4]) == conv((0, 11), (1, 7), (2, 3), (3, 0))
    assert polygon(by_d[5]) == "Conv{(0,11),(1,6),(3,0)}"


def test_second_example_special_fibre():
    a = an(E2, "0")
    assert len(a.canyons) == 2
    for C in a.canyons:
        assert C.d == 4 and polygon(C) == "Conv{(0,11),(1,7),(3,0)}"
    (pm,) = [C for C in a.canyons if C.members[0].polar.arc.size == 2]
    assert (2, Fraction(7, 2)) in pm.reference.base.dots
    # mu counts polar roots within contact d of the reference: the conjugate sits at 7/2 < 4
    assert pm.mu == pm.aug.econ_length == 1
    assert pm.branch_count == 2


def test_cusp_single_canyon():
    a = an("x^2 + y^3")
    (C,) = a.canyons
    assert C.d == 2 and C.h == 3 and str(C.aug) == "Conv{(0,2),(1,0)}"
    (cl,) = a.clusters
    assert cl.K == {0: ()}


def test_clusters_first_example_separate():
    a = an(E1, "1/2")
    assert len(a.clusters) == 2
    assert a.contacts[(0, 1)] == 3


def test_cluster_of_equal_degree_canyons():
    a = an(E2, "0")
    (cl,) = a.clusters
    assert sorted(cl.canyons) == [0, 1]
    assert cl.K == {0: (Fraction(7, 2),), 1: (Fraction(7, 2),)}
    assert cl.subclusters == [[0, 1]]


def test_members_share_polygon():
    a = an(E1, "1/3")
    for C in a.canyons:
        polys = {str(m.data.aug) for m in C.members}
        assert len(polys) == 1
        assert {(m.data.d, m.data.h, str(m.data.a)) for m in C.members} == {(C.d, C.h, str(C.a))}


def test_degree_one_canyons_are_kept_apart():
    a = analyze(parse("x^5 + 3/2*x^4*y + 3*y^8"), 24)
    one = [C for C in a.canyons if C.degree_one]
    assert len(one) == 1 and one[0].mu == one[0].aug.econ_length == 4
    assert all(0 not in cl.canyons for cl in a.clusters)


def test_polar_data_fields():
    f = parse(E1, {"t": Fraction(1, 2)})
    pd = polar_data(f, PuiseuxSeries.zero())
    assert pd.h == 12 and str(pd.a) == "1" and pd.delta_top == 3
    assert sorted(pd.base.dots) == [(1, 7), (2, 3), (3, 0)]
