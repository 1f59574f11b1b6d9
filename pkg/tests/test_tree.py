from fractions import Fraction

from hypothesis import given, settings, strategies as st

from canyonlab.canyon import polar_data, polar_roots
from canyonlab.poly import parse, relative
from canyonlab.polygon import lower_hull
from canyonlab.series import PuiseuxSeries
from canyonlab.solver import puiseux_roots
from canyonlab.tree import build_tree, is_ultrametric, root_contact, topological_part

E1 = "x^4 + x^3*y^3 + y^12 + 1/2*x^2*y^7"


def test_two_leaves():
    tree = build_tree(puiseux_roots(parse("x^2 - y^2"), 4))
    assert tree.heights() == [1]


def test_single_root_has_no_bars():
    tree = build_tree(puiseux_roots(parse("x - y^2"), 4))
    assert tree.root is None and tree.bars() == []


def test_first_example_top_bar():
    f = parse(E1)
    tree = build_tree(puiseux_roots(f, 8))
    assert len(tree.leaves) == 4
    assert tree.heights() == [3]
    pd = polar_data(f, PuiseuxSeries.zero())
    assert pd.delta_top == 3
    multiset, edges = topological_part(puiseux_roots(f, 8).all_members(), PuiseuxSeries.zero(), 3)
    assert multiset == [] and edges == []


def test_explicit_contact_multiset():
    roots = [(PuiseuxSeries([(1, 1)]), 1), (PuiseuxSeries([(2, 1)]), 1),
             (PuiseuxSeries([(3, 1)]), 1)]
    gamma = PuiseuxSeries([(3, 1), (5, 1)])
    multiset, edges = topological_part(roots, gamma, 4)
    assert multiset == [1, 2]
    assert edges == [(2, 1), (1, 1)]


def test_single_root_germ_multiset():
    roots = puiseux_roots(parse("x - y^3"), 6).all_members()
    assert topological_part(roots, PuiseuxSeries([(3, 1), (4, 1)]), 4) == ([], [])


def _contacts(members):
    n = len(members)
    return [[None if i == j else root_contact(members[i][0], members[j][0]) for j in range(n)]
            for i in range(n)]


def _check_lemma(f, T=12):
    bundle, polars = polar_roots(f, T, max_degree=32)
    # roots of f over the polar tower so that contacts can be taken
    roots = puiseux_roots(f, T, tower=bundle.tower, max_degree=64).all_members()
    assert is_ultrametric(_contacts(roots))
    for cls, _ in polars:
        pd = polar_data(f, cls.representative)
        predicted = topological_part(roots, pd.series, pd.delta_top)[1]
        got = [(e.coslope, e.length) for e in pd.np_f.edges if e.coslope < pd.delta_top]
        assert got == predicted
        # any arc agreeing with the polar below delta_top sees the same contacts
        moved = pd.series.truncate(pd.delta_top) + PuiseuxSeries([(pd.delta_top, 7)])
        assert topological_part(roots, moved, pd.delta_top)[0] == \
            topological_part(roots, pd.series, pd.delta_top)[0]


def test_lemma_on_fixed_germs():
    for text in [E1, "x^4 + x^2*y^7 + y^12", "(x - y)*(x - y^2)*(x + y^2)*(x - y^3)",
                 "x^3 + x*y^5 + y^9", "x^5 - y^2*x^3 + y^11"]:
        _check_lemma(parse(text))


@settings(max_examples=20, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 4), st.integers(-2, 2).filter(bool)),
                min_size=2, max_size=4, unique_by=lambda t: t))
def test_lemma_on_products_of_smooth_branches(branches):
    text = "*".join(f"(x - ({c})*y^{e})" for e, c in branches) + " + y^20"
    _check_lemma(parse(text), T=24)


def test_np_f_uses_all_dots():
    f = parse(E1)
    F = relative(f, PuiseuxSeries.zero())
    hull = lower_hull([d for d in F.dots() if d[0] != 1])
    assert hull.vertices[0] == (0, 12) and hull.coslopes() == [3]
    assert Fraction(3) in hull.coslopes()
