"""Second-level invariants, the identity card and card comparison."""

from __future__ import annotations

import itertools
import json
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import __version__
from .arith import Coeff
from .canyon import Analysis, Canyon, analyze, polar_data
from .errors import (ExtensionTooLarge, MissingCounterpartPolar, TruncationTooLow,
                     UnequalOrders)
from .poly import BivarPoly, make_mini_regular, mini_regular_order, render, substitute
from .polygon import y_intercept
from .serial import coeff_to_json, dumps, rat_from_str, rat_to_str, tower_to_json
from .series import PuiseuxSeries
from .solver import puiseux_roots
from .tree import build_tree

CARD_VERSION = 1
DEFAULT_CAP = 8


@dataclass
class SecondLevel:
    pair: tuple  # canyon indices
    representatives: tuple  # the two explicit polar series
    delta: Fraction
    h: Fraction
    H: Fraction | None  # None when only the lower bound h + delta - 1 is known
    a_tilde: Coeff | None
    a_tilde_prime: Coeff | None
    applicable: bool

    @property
    def Delta(self) -> Coeff | None:
        if self.a_tilde is None:
            return None
        return self.a_tilde - self.a_tilde_prime

    @property
    def bound(self) -> Fraction:
        return self.h + self.delta - 1

    def to_json(self) -> dict:
        out = {"applicable": self.applicable, "delta": rat_to_str(self.delta),
               "h": rat_to_str(self.h), "pair": list(self.pair)}
        if self.H is None:
            out["H"] = None
            out["H_lower_bound"] = rat_to_str(self.bound)
            out["Delta"] = None
        else:
            out["H"] = rat_to_str(self.H)
            out["Delta"] = coeff_to_json(self.Delta)
        return out


# -- helpers ---------------------------------------------------------------------

def _ord_diff(a: PuiseuxSeries, b: PuiseuxSeries):
    """``(value, certified)`` for ``ord(a - b)``."""
    d = a - b
    if d.terms:
        return d.terms[0][0], True
    return d.trunc, False


def canyon_series(C: Canyon):
    """All explicit polar series of a canyon (every conjugate of every member)."""
    return [s for mem in C.members for s in mem.polar.arc.members]


class _FCache:
    def __init__(self, f: BivarPoly):
        self.f = f
        self.vals: dict[int, PuiseuxSeries] = {}

    def normalized(self, s: PuiseuxSeries) -> PuiseuxSeries:
        key = id(s)
        if key not in self.vals:
            v = substitute(self.f, s)
            self.vals[key] = v * v.lc.inverse()
        return self.vals[key]


def _H_of(fc: _FCache, a: PuiseuxSeries, b: PuiseuxSeries):
    """``(H or lower bound, certified, normalized f(a), normalized f(b))``."""
    na, nb = fc.normalized(a), fc.normalized(b)
    H, ok = _ord_diff(na, nb)
    return H, ok, na, nb


def second_level(f: BivarPoly, gamma: PuiseuxSeries, gamma_prime: PuiseuxSeries,
                 pair=(0, 1), _fc=None) -> SecondLevel:
    """``(delta, H, a~, a~')`` for two explicit polar arcs with equal ``h``."""
    fc = _fc or _FCache(f)
    delta, ok = _ord_diff(gamma, gamma_prime)
    if not ok:
        raise TruncationTooLow("contact of the two polars is not certified")
    fa, fb = substitute(f, gamma), substitute(f, gamma_prime)
    h, h2 = fa.certified_ord(), fb.certified_ord()
    if h != h2:
        raise UnequalOrders(f"ord f differs along the two polars: {h} vs {h2}")
    H, ok, na, nb = _H_of(fc, gamma, gamma_prime)
    bound = h + delta - 1
    if not ok:
        if H >= bound:
            return SecondLevel(pair, (gamma, gamma_prime), delta, h, None, None, None, False)
        raise TruncationTooLow(f"H is not certified below y^{H}")
    if H >= bound:
        return SecondLevel(pair, (gamma, gamma_prime), delta, h, None, None, None, False)
    return SecondLevel(pair, (gamma, gamma_prime), delta, h, H, na.coefficient(H),
                       nb.coefficient(H), True)


def h_min(analysis: Analysis, i: int, j: int, delta=None, _fc=None):
    """``(delta, H_min, realizing pair)`` over explicit member pairs at contact ``delta``.

    ``delta`` defaults to the contact of the two canyons; ``i == j`` compares
    distinct conjugates inside one canyon and needs an explicit ``delta``.
    """
    A, B = analysis.canyons[i], analysis.canyons[j]
    if A.h != B.h:
        raise UnequalOrders(f"h differs between canyons {i} and {j}")
    fc = _fc or _FCache(analysis.f)
    if delta is None:
        delta = analysis.contacts[(i, j)]
    best, best_pair, uncertified = None, None, None
    for a in canyon_series(A):
        for b in canyon_series(B):
            if a is b:
                continue
            c, ok = _ord_diff(a, b)
            if not ok:
                if c <= delta:
                    raise TruncationTooLow("member contact not certified")
                continue
            if c != delta:
                continue
            H, ok, _, _ = _H_of(fc, a, b)
            if not ok:
                uncertified = H if uncertified is None else min(uncertified, H)
                continue
            if best is None or H < best:
                best, best_pair = H, (a, b)
    if uncertified is not None and (best is None or uncertified < best):
        if uncertified < A.h + delta - 1:
            raise TruncationTooLow("H_min is not certified")
        return delta, None, None
    return delta, best, best_pair


def canyon_second_level(analysis: Analysis, i: int, j: int, _fc=None) -> SecondLevel | None:
    """Record for canyons ``i < j`` of equal ``h``, realized by the first ``H_min`` pair."""
    A, B = analysis.canyons[i], analysis.canyons[j]
    if A.h != B.h:
        return None
    fc = _fc or _FCache(analysis.f)
    delta, H, pair = h_min(analysis, i, j, _fc=fc)
    if H is None or H >= A.h + delta - 1:
        rep = (A.reference.series, B.reference.series)
        return SecondLevel((i, j), rep, delta, A.h, None, None, None, False)
    return second_level(analysis.f, pair[0], pair[1], (i, j), fc)


def h_a_stability_check(f: BivarPoly, gamma: PuiseuxSeries, delta_perturb, u=1,
                        delta_top=None) -> bool | None:
    """Whether ``(h, a)`` survive ``gamma -> gamma + u*y^delta_perturb``; ``None`` if not applicable."""
    if delta_top is None:
        delta_top = polar_data(f, gamma).delta_top
    if Fraction(delta_perturb) <= delta_top:
        return None
    base = substitute(f, gamma)
    moved = substitute(f, gamma + PuiseuxSeries([(Fraction(delta_perturb), u)]))
    h, h2 = base.certified_ord(), moved.certified_ord()
    return h == h2 and (base.lc - moved.lc).is_zero()


@dataclass
class OmegaRecord:
    """One intermediate edge of the base polygon and the canyons at contact ``delta``.

    ``partners`` is ``[(canyon index, H_min or None)]``; the edge passes when some
    partner realizes ``H_min = omega + delta < h + delta - 1``.
    """

    canyon: int
    delta: Fraction
    omega: Fraction
    partners: list
    h: Fraction

    def _ok(self, H) -> bool:
        return (H is not None and H == self.omega + self.delta
                and self.omega + self.delta < self.h + self.delta - 1)

    @property
    def H_min(self) -> Fraction | None:
        """The realizing value, else the least certified one."""
        for _, H in self.partners:
            if self._ok(H):
                return H
        vals = [H for _, H in self.partners if H is not None]
        return min(vals) if vals else None

    @property
    def passed(self) -> bool:
        return any(self._ok(H) for _, H in self.partners)

    def to_json(self) -> dict:
        H = self.H_min
        return {"H_min": None if H is None else rat_to_str(H),
                "canyon": self.canyon, "delta": rat_to_str(self.delta),
                "omega": rat_to_str(self.omega),
                "partners": [{"H_min": None if v is None else rat_to_str(v), "canyon": j}
                             for j, v in self.partners],
                "pass": self.passed}


def omega_consistency(analysis: Analysis, i: int, _fc=None) -> list:
    """Check ``H_min = omega + delta < h + delta - 1`` on every edge strictly between ``delta_top`` and ``d``."""
    C = analysis.canyons[i]
    if C.degree_one:
        return []
    fc = _fc or _FCache(analysis.f)
    ref = C.reference
    out = []
    for e in ref.base.edges:
        delta = e.coslope
        if not (C.delta_top < delta < C.d):
            continue
        omega = y_intercept(ref.base.dots, delta)
        # canyons holding a polar root at contact exactly delta with the reference
        partners = []
        for j, D in enumerate(analysis.canyons):
            for b in canyon_series(D):
                if b is ref.series:
                    continue
                c, ok = _ord_diff(ref.series, b)
                if ok and c == delta:
                    partners.append(j)
                    break
        if not partners:
            raise MissingCounterpartPolar(f"no polar at contact {delta} with canyon {i}")
        results = []
        for j in partners:
            H = None
            if analysis.canyons[j].h == C.h:
                _, H, _ = h_min(analysis, i, j, delta, fc)
            results.append((j, H))
        out.append(OmegaRecord(i, delta, omega, results, C.h))
    return out


# -- identity card ---------------------------------------------------------------

@dataclass
class IdentityCard:
    data: dict
    analysis: Analysis | None = field(default=None, repr=False, compare=False)

    def to_json(self) -> str:
        return dumps(self.data)

    @classmethod
    def from_json(cls, text: str) -> "IdentityCard":
        data = json.loads(text)
        if data.get("version") != CARD_VERSION:
            raise ValueError(f"unsupported card version {data.get('version')!r}")
        return cls(data)

    def __eq__(self, other):
        return isinstance(other, IdentityCard) and self.data == other.data


def _series_json(s: PuiseuxSeries) -> str:
    return str(s)


def _card_body(an: Analysis, fc: _FCache) -> dict:
    canyons = []
    for i, C in enumerate(an.canyons):
        canyons.append({
            "a": coeff_to_json(C.a),
            "augmented_polygon": C.aug.to_json(),
            "branch_count": C.branch_count,
            "degree": rat_to_str(C.d),
            "degree_one": C.degree_one,
            "delta_top": rat_to_str(C.delta_top),
            "h": rat_to_str(C.h),
            "index": i,
            "members": [{"multiplicity": m.polar.multiplicity, "series": _series_json(m.data.series),
                         "size": m.polar.arc.size} for m in C.members],
            "mu": C.mu,
            "tangent": coeff_to_json(C.tangent),
        })
    contacts = [{"contact": rat_to_str(c), "pair": [i, j]}
                for (i, j), c in sorted(an.contacts.items()) if i < j]
    clusters = []
    for cl in an.clusters:
        clusters.append({
            "bar": cl.key[3],
            "canyons": cl.canyons,
            "contacts": [{"contact": rat_to_str(c), "pair": [i, j]}
                         for (i, j), c in sorted(cl.contacts.items()) if i < j],
            "degree": rat_to_str(cl.key[1]),
            "delta_top": rat_to_str(cl.key[2]),
            "K": {str(i): [rat_to_str(k) for k in ks] for i, ks in sorted(cl.K.items())},
            "subclusters": cl.subclusters,
            "tangent": cl.key[0],
        })
    second = []
    n = len(an.canyons)
    for i in range(n):
        for j in range(i + 1, n):
            A, B = an.canyons[i], an.canyons[j]
            if A.degree_one or B.degree_one or not (A.tangent - B.tangent).is_zero():
                continue
            rec = canyon_second_level(an, i, j, fc)
            if rec is not None:
                second.append(rec.to_json())
    omega = []
    for i in range(n):
        omega.extend(r.to_json() for r in omega_consistency(an, i, fc))
    polars = [{"multiplicity": m, "series": _series_json(cls.representative), "size": cls.size}
              for cls, m in an.polars]
    return {"canyons": canyons, "clusters": clusters, "contacts": contacts,
            "omega": omega, "polars": polars, "second_level": second}


_VOLATILE = {"series", "truncation", "rounds", "tree_truncation"}


def invariant_view(data):
    """Card content with truncation-dependent fields removed (used for stabilization)."""
    if isinstance(data, dict):
        return {k: invariant_view(v) for k, v in data.items() if k not in _VOLATILE}
    if isinstance(data, list):
        return [invariant_view(v) for v in data]
    return data


def _required_trunc(an: Analysis) -> Fraction:
    hs = [C.h for C in an.canyons] or [Fraction(0)]
    cs = list(an.contacts.values()) or [Fraction(0)]
    return 2 * (1 + max(hs) + max(cs))


def _cap_from_env(cap):
    if cap is not None:
        return int(cap)
    env = os.environ.get("CANYONLAB_CAP")
    return int(env) if env else DEFAULT_CAP


def _tree_json(f: BivarPoly, start, cap: int, max_degree):
    T = Fraction(start)
    for _ in range(cap + 1):
        try:
            bundle = puiseux_roots(f, T, max_degree=max_degree)
            roots = bundle.all_members()
            tree = build_tree(roots)
            return tree.to_json(), T, bundle
        except TruncationTooLow:
            T *= 2
    raise TruncationTooLow("roots of f did not separate within the doubling cap")


def identity_card(f: BivarPoly, text: str | None = None, params: dict | None = None,
                  trunc=None, cap: int | None = None, with_tree: bool = True,
                  max_degree: int | None = None) -> IdentityCard:
    """Full invariant bundle of a germ, certified by truncation doubling."""
    cap = _cap_from_env(cap)
    g, lam = make_mini_regular(f)
    m = mini_regular_order(g)

    def run(T):
        an = analyze(g, T, max_degree)
        return an, _card_body(an, _FCache(g))

    rounds = 0
    if trunc is not None:
        T = Fraction(trunc)
        an, body = run(T)
    else:
        T = Fraction(max(4, 2 * m))
        an = body = None
        while True:
            try:
                an, body = run(T)
            except TruncationTooLow:
                rounds += 1
                if rounds > cap:
                    raise
                T *= 2
                continue
            need = _required_trunc(an)
            if T < need:
                T = Fraction(need.__ceil__())
                continue
            try:
                an2, body2 = run(2 * T)
            except TruncationTooLow:
                body2 = None
            if body2 is not None and invariant_view(body2) == invariant_view(body):
                break
            rounds += 1
            if rounds > cap:
                raise TruncationTooLow("invariants did not stabilize within the doubling cap")
            T *= 2
    notes = []
    if lam:
        notes.append(f"germ sheared by y -> y + {lam}*x to make it mini-regular")
    if any(C.degree_one for C in an.canyons):
        notes.append("degree-one canyons are reported but excluded from clusters and comparison")
    notes.append("coefficient constraints use one constant c per tangent line")
    data = dict(body)
    data["version"] = CARD_VERSION
    data["generator"] = f"canyonlab {__version__}"
    data["germ"] = {"input": text if text is not None else render(f),
                    "mini_regular_order": m,
                    "params": {k: rat_to_str(v) for k, v in sorted((params or {}).items())},
                    "polynomial": render(g), "shear": lam}
    data["truncation"] = rat_to_str(T)
    data["rounds"] = rounds
    data["tower"] = tower_to_json(an.fx_roots.tower)
    data["tower_verified"] = an.fx_roots.tower.verified
    data["notes"] = notes
    if with_tree:
        start = 2 * (1 + max([C.delta_top for C in an.canyons] or [Fraction(1)]))
        try:
            tree, tT, _ = _tree_json(g, start, cap, max_degree)
            data["tree"] = tree
            data["tree_truncation"] = rat_to_str(tT)
        except (ExtensionTooLarge, TruncationTooLow) as exc:
            data["tree"] = None
            notes.append(f"Kuo-Lu tree skipped: {exc}")
    return IdentityCard(data, an)


# -- comparison --------------------------------------------------------------------

@dataclass
class Verdict:
    distinguished: bool
    witnesses: list
    notes: list = field(default_factory=list)
    #: rejected constraint systems, each ``[(k, lam)]`` meaning ``c^k = lam``
    rejected: list = field(default_factory=list)

    @property
    def kind(self) -> str:
        return "Distinguished" if self.distinguished else "Inconclusive"

    def __str__(self):
        lines = [self.kind]
        lines += [f"  witness: {w}" for w in self.witnesses]
        lines += [f"  note: {n}" for n in self.notes]
        for cons in self.rejected:
            eqs = ", ".join(f"c^{k} = {rat_to_str(lam)}" for k, lam in cons)
            lines.append(f"  inconsistent: {eqs}")
        return "\n".join(lines)


def _canyon_sig(c: dict) -> tuple:
    return (c["degree"], c["h"], c["delta_top"], tuple(c["augmented_polygon"]["vertices"]), c["mu"])


def _active(card: dict):
    return [c for c in card["canyons"] if not c["degree_one"]]


def _contact_map(card: dict) -> dict:
    out = {}
    for rec in card["contacts"]:
        i, j = rec["pair"]
        out[(i, j)] = out[(j, i)] = rec["contact"]
    return out


def _tangent_groups(card: dict) -> dict:
    groups: dict[str, list] = {}
    for c in _active(card):
        groups.setdefault(json.dumps(c["tangent"], sort_keys=True), []).append(c["index"])
    return groups


def _second_map(card: dict) -> dict:
    out = {}
    for rec in card["second_level"]:
        i, j = rec["pair"]
        out[(i, j)] = rec
    return out


def _sl_sig(rec: dict | None):
    if rec is None:
        return None
    return (rec["delta"], rec["h"], rec["H"], rec.get("H_lower_bound"), rec["applicable"])


def _cluster_of(card: dict) -> dict:
    out = {}
    for cl in card["clusters"]:
        for i in cl["canyons"]:
            out[i] = (cl["degree"], cl["delta_top"], tuple(cl["K"][str(i)]))
    return out


def _group_sig(card: dict, idx: list) -> tuple:
    cmap = _contact_map(card)
    sl = _second_map(card)
    cl = _cluster_of(card)
    by = {c["index"]: c for c in card["canyons"]}
    cans = sorted((_canyon_sig(by[i]), cl.get(i)) for i in idx)
    contacts = sorted(cmap[(i, j)] for i in idx for j in idx if i < j)
    seconds = sorted((_sl_sig(sl.get((i, j))) or ()) for i in idx for j in idx if i < j
                     if (i, j) in sl)
    return (tuple(cans), tuple(contacts), tuple(seconds))


_CATEGORIES = [
    ("canyon degrees", lambda c: sorted(x["degree"] for x in _active(c))),
    ("h values", lambda c: sorted(x["h"] for x in _active(c))),
    ("augmented polygon vertex set",
     lambda c: sorted(tuple(x["augmented_polygon"]["vertices"]) for x in _active(c))),
    ("polar multiplicities", lambda c: sorted(x["mu"] for x in _active(c))),
    ("top-edge co-slopes", lambda c: sorted(x["delta_top"] for x in _active(c))),
    ("cluster structure",
     lambda c: sorted((cl["degree"], cl["delta_top"], len(cl["canyons"]),
                       tuple(sorted(tuple(v) for v in cl["K"].values()))) for cl in c["clusters"])),
    ("canyon contacts", lambda c: sorted(
        r["contact"] for r in c["contacts"]
        if not c["canyons"][r["pair"][0]]["degree_one"]
        and not c["canyons"][r["pair"][1]]["degree_one"])),
    ("second-level H values", lambda c: sorted(_sl_sig(r) for r in c["second_level"])),
    ("omega data", lambda c: sorted((r["delta"], r["omega"], r["H_min"]) for r in c["omega"])),
    ("tangent groups", lambda c: sorted(len(v) for v in _tangent_groups(c).values())),
]

#: enumeration cap for canyon bijections before giving up
BIJECTION_CAP = 20000


def _rational(cj: dict | None):
    if cj is None or cj.get("rational") is None:
        return None
    return Fraction(cj["rational"])


def _constraint(k: Fraction, lam: Fraction):
    """``c^k = lam`` with rational ``k`` raised to an integer exponent."""
    p, q = k.numerator, k.denominator
    return p, lam ** q


def _consistent(cons) -> bool:
    for k, lam in cons:
        if lam == 0:
            return False
        if k == 0 and lam != 1:
            return False
    for (k1, l1), (k2, l2) in itertools.combinations(cons, 2):
        if k1 == 0 or k2 == 0:
            continue
        g = gcd(k1, k2)
        if l1 ** (k2 // g) != l2 ** (k1 // g):
            return False
    return True


def _constraints_for(cf: dict, cg: dict, perm: dict, idx_f: list, notes: set):
    by_f = {c["index"]: c for c in cf["canyons"]}
    by_g = {c["index"]: c for c in cg["canyons"]}
    cons = []
    for i in idx_f:
        af, ag = _rational(by_f[i]["a"]), _rational(by_g[perm[i]]["a"])
        if af is None or ag is None:
            notes.add("irrational leading coefficients skipped in c-constraints")
            continue
        h = Fraction(by_f[i]["h"])
        # a_g = c^(-h) a_f
        cons.append(_constraint(-h, ag / af))
    slf, slg = _second_map(cf), _second_map(cg)
    for i, j in itertools.combinations(sorted(idx_f), 2):
        rf = slf.get((i, j))
        if rf is None or not rf["applicable"]:
            continue
        gi, gj = perm[i], perm[j]
        sign = 1
        if gi > gj:
            gi, gj, sign = gj, gi, -1
        rg = slg.get((gi, gj))
        if rg is None or not rg["applicable"]:
            continue
        df, dg = _rational(rf["Delta"]), _rational(rg["Delta"])
        if df is None or dg is None:
            notes.add("irrational second-level coefficients skipped in c-constraints")
            continue
        dg = dg * sign
        k = Fraction(rf["h"]) - Fraction(rf["H"])
        if df == 0:
            if dg != 0:
                cons.append((0, Fraction(2)))  # unsatisfiable marker
            continue
        cons.append(_constraint(k, dg / df))
    return cons


def _bijections(cf, cg, idx_f, idx_g):
    """Signature- and contact-preserving bijections ``idx_f -> idx_g``."""
    by_f = {c["index"]: c for c in cf["canyons"]}
    by_g = {c["index"]: c for c in cg["canyons"]}
    clf, clg = _cluster_of(cf), _cluster_of(cg)
    mf, mg = _contact_map(cf), _contact_map(cg)
    slf, slg = _second_map(cf), _second_map(cg)

    def sig(c, cl):
        return (_canyon_sig(c), cl.get(c["index"]))

    order = sorted(idx_f)
    cands = {i: [j for j in idx_g if sig(by_g[j], clg) == sig(by_f[i], clf)] for i in order}
    count = 0

    def sl_match(i, j, gi, gj):
        a = slf.get((min(i, j), max(i, j)))
        b = slg.get((min(gi, gj), max(gi, gj)))
        return _sl_sig(a) == _sl_sig(b)

    def rec(k, perm, used):
        nonlocal count
        if k == len(order):
            count += 1
            if count > BIJECTION_CAP:
                raise OverflowError
            yield dict(perm)
            return
        i = order[k]
        for j in cands[i]:
            if j in used:
                continue
            if all(mf[(i, p)] == mg[(j, perm[p])] and sl_match(i, p, j, perm[p]) for p in perm):
                perm[i] = j
                used.add(j)
                yield from rec(k + 1, perm, used)
                del perm[i]
                used.discard(j)

    yield from rec(0, {}, set())


def compare_cards(card_f, card_g) -> Verdict:
    """Distinguished when a discrete invariant differs or the c-action cannot match coefficients."""
    cf = card_f.data if isinstance(card_f, IdentityCard) else card_f
    cg = card_g.data if isinstance(card_g, IdentityCard) else card_g
    witnesses = [name for name, fn in _CATEGORIES if fn(cf) != fn(cg)]
    gf, gg = _tangent_groups(cf), _tangent_groups(cg)
    sig_f = sorted(_group_sig(cf, v) for v in gf.values())
    sig_g = sorted(_group_sig(cg, v) for v in gg.values())
    if sig_f != sig_g and not witnesses:
        witnesses.append("cluster structure")
    if witnesses:
        return Verdict(True, witnesses)
    notes: set[str] = set()
    notes.add("one constant c per tangent line")
    rejected = []
    groups_f, groups_g = list(gf.values()), list(gg.values())
    try:
        any_group_matching_ok = False
        for gperm in itertools.permutations(range(len(groups_g))):
            pairs = list(zip(groups_f, [groups_g[k] for k in gperm]))
            if any(_group_sig(cf, a) != _group_sig(cg, b) for a, b in pairs):
                continue
            matching_ok = True
            for a, b in pairs:
                group_ok = False
                for perm in _bijections(cf, cg, a, b):
                    cons = _constraints_for(cf, cg, perm, a, notes)
                    if _consistent(cons):
                        group_ok = True
                        break
                    rejected.append(cons)
                if not group_ok:
                    matching_ok = False
                    break
            if matching_ok:
                any_group_matching_ok = True
                break
    except OverflowError:
        notes.add("too many canyon bijections to enumerate")
        return Verdict(False, [], sorted(notes))
    if not any_group_matching_ok:
        return Verdict(True, ["c-constraints (coefficients a_C and second-level gaps)"],
                       sorted(notes), rejected)
    return Verdict(False, [], sorted(notes))
