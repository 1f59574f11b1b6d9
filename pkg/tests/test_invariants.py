import json
import random
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import pytest

from canyonlab.canyon import random_unit
from canyonlab.errors import TruncationTooLow
from canyonlab.invariants import (IdentityCard, canyon_second_level, canyon_series, compare_cards, h_a_stability_check,
                                  h_min, identity_card, omega_consistency, second_level)
from canyonlab.poly import parse, substitute
from canyonlab.series import PuiseuxSeries

from oracles import brute_h_min

E1 = "x^4 + x^3*y^3 + y^12 + t*x^2*y^7"
E2 = "x^4 + y^12 + t*x^3*y^3 + (1-t)*x^2*y^7"
INTERMEDIATE = "3*x^4 - 4*x^3*y^3 - 4*x^3*y^2 + 6*x^2*y^5 + y^10"


@lru_cache(maxsize=None)
def card(text, t=None):
    params = {} if t is None else {"t": Fraction(t)}
    return identity_card(parse(text, params), text, params)


def by_degree(c):
    return {Fraction(C["degree"]): C for C in c.data["canyons"]}


def test_value_along_gamma_minus():
    f = parse(E1, {"t": Fraction(1, 2)})
    a = card(E1, "1/2").analysis
    (C2,) = [C for C in a.canyons if C.d == 5]
    v = substitute(f, C2.reference.series)
    assert v.terms[0] == (12, Fraction(229, 256))
    assert v.terms[1] == (13, Fraction(9, 32))


@pytest.mark.parametrize("t, expected", [("1/2", Fraction(-72, 229)), ("1/3", Fraction(-48, 229))])
def test_second_level_first_example(t, expected):
    c = card(E1, t)
    (rec,) = c.data["second_level"]
    assert rec["delta"] == "3" and rec["H"] == "13" and rec["applicable"]
    assert Fraction(rec["Delta"]["rational"]) == expected
    # Delta is linear in t with slope -144/229
    assert expected == Fraction(-144, 229) * Fraction(t)


def test_second_level_direct_pair():
    f = parse(E1, {"t": Fraction(1, 2)})
    a = card(E1, "1/2").analysis
    g0 = PuiseuxSeries.zero()
    (C2,) = [C for C in a.canyons if C.d == 5]
    rec = second_level(f, g0, C2.reference.series)
    assert rec.applicable and rec.H == 13 and rec.delta == 3
    assert rec.Delta.to_rational() == Fraction(-72, 229)
    assert rec.H < rec.h + rec.delta - 1


def test_second_level_special_fibre():
    a = card("x^4 + x^2*y^7 + y^12").analysis
    rec = canyon_second_level(a, 0, 1)
    assert rec.applicable and rec.H == 14 and rec.H < rec.h + rec.delta - 1
    assert rec.Delta.to_rational() == Fraction(1, 4)


def test_second_level_gate():
    f = parse("x^2 + y^5")
    rec = second_level(f, PuiseuxSeries([(4, 1)]), PuiseuxSeries([(4, 2)]))
    # the values agree up to y^8 = y^(h + delta - 1), so no second-level data
    assert (rec.h, rec.delta) == (5, 4)
    assert not rec.applicable and rec.H is None


def test_second_level_uncertified_contact():
    f = parse("x^2 + y^5")
    with pytest.raises(TruncationTooLow):
        second_level(f, PuiseuxSeries([(2, 1), (3, 1)]), PuiseuxSeries([(2, 1)], trunc=3))


def test_h_a_stability_first_example():
    f = parse(E1, {"t": Fraction(1, 2)})
    assert h_a_stability_check(f, PuiseuxSeries.zero(), 4, 1) is True
    assert h_a_stability_check(f, PuiseuxSeries.zero(), 3, 1) is None
    rng = random.Random(3)
    for _ in range(5):
        assert h_a_stability_check(f, PuiseuxSeries.zero(), 4, random_unit(rng)) is True


def test_h_min_first_example():
    a = card(E1, "1/2").analysis
    assert h_min(a, 0, 1)[:2] == (3, 13)


def test_omega_empty_without_intermediate_edge():
    a = card(E1, "1/2").analysis
    assert [omega_consistency(a, i) for i in range(len(a.canyons))] == [[], []]
    a = card(E2, "1/2").analysis
    (c0,) = [i for i, C in enumerate(a.canyons) if C.d == 4]
    assert omega_consistency(a, c0) == []


def test_omega_on_constructed_germ():
    c = card(INTERMEDIATE)
    assert c.data["omega"]
    for rec in c.data["omega"]:
        assert rec["pass"]
        assert Fraction(rec["H_min"]) == Fraction(rec["omega"]) + Fraction(rec["delta"])


def test_card_first_example():
    c = card(E1, "1/2")
    d = by_degree(c)
    assert sorted(d) == [4, 5]
    assert {C["h"] for C in d.values()} == {"12"}
    assert d[4]["augmented_polygon"]["vertices"] == ["(0,11)", "(2,3)", "(3,0)"]
    assert d[5]["augmented_polygon"]["vertices"] == ["(0,11)", "(1,6)", "(3,0)"]
    assert (d[4]["mu"], d[5]["mu"]) == (2, 1)


def test_card_second_example_special_fibre():
    c = card(E2, "0")
    for C in c.data["canyons"]:
        assert C["augmented_polygon"]["vertices"] == ["(0,11)", "(1,7)", "(3,0)"]
    assert [lv["minpoly"] for lv in c.data["tower"]] == ["Z^2 + 1/2"]


def test_card_cusp():
    c = card("x^2 + y^3")
    (C,) = c.data["canyons"]
    assert C["h"] == "3" and C["augmented_polygon"]["vertices"] == ["(0,2)", "(1,0)"]


def test_json_round_trip():
    for c in [card(E1, "1/2"), card(E2, "0"), card("x^2 + y^3")]:
        text = c.to_json()
        again = IdentityCard.from_json(text)
        assert again == c and again.to_json() == text


def test_compare_second_example():
    v = compare_cards(card(E2, "0"), card(E2, "1/2"))
    assert v.distinguished and "augmented polygon vertex set" in v.witnesses
    assert "canyon degrees" in v.witnesses


def test_compare_first_example_constraints():
    v = compare_cards(card(E1, "1/2"), card(E1, "1/3"))
    assert v.distinguished
    assert v.witnesses == ["c-constraints (coefficients a_C and second-level gaps)"]
    (cons,) = v.rejected
    assert (-12, 1) in cons and (-1, Fraction(2, 3)) in cons
    back = compare_cards(card(E1, "1/3"), card(E1, "1/2"))
    assert back.distinguished


@pytest.mark.parametrize("text, t", [(E1, "1/2"), (E2, "0"), ("x^2 + y^3", None)])
def test_compare_reflexive(text, t):
    c = card(text, t)
    assert not compare_cards(c, c).distinguished
    assert not compare_cards(c, IdentityCard.from_json(c.to_json())).distinguished


FIXTURES = json.loads((Path(__file__).parent / "fixtures" / "intermediate_edges.json").read_text())


@pytest.mark.parametrize("fx", FIXTURES, ids=[fx["germ"] for fx in FIXTURES])
def test_omega_fixtures(fx):
    c = card(fx["germ"])
    a = c.analysis
    recs = [r for i in range(len(a.canyons)) for r in omega_consistency(a, i)]
    hits = [r for r in recs if r.delta == Fraction(fx["delta"])]
    assert hits and all(r.passed for r in recs)
    r = hits[0]
    assert r.omega == Fraction(fx["omega"]) and r.H_min == Fraction(fx["H"])
    members = [s for i in range(len(a.canyons)) for s in canyon_series(a.canyons[i])]
    ref = a.canyons[r.canyon].reference.series
    assert brute_h_min(a.f, [ref], members, r.delta) == r.H_min
