"""Polar arcs, gradient degrees, gradient canyons and their clusters."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .arith import Coeff, QQ
from .errors import InconsistentCanyon, NoDots, TruncationTooLow
from .poly import BivarPoly, RelativePoly, derivative_x, derivative_y, relative, substitute
from .polygon import (AugmentedPolygon, Dot, NewtonPolygon, augment, height_at, lower_hull,
                      top_edge_data)
from .series import PuiseuxSeries, max_contact
from .solver import ArcClass, RootBundle, puiseux_roots


@dataclass
class PolarData:
    """Everything read off one explicit polar series ``gamma``."""

    series: PuiseuxSeries
    h: Fraction
    a: Coeff
    d: Fraction
    delta_top: Fraction
    tangent: Coeff
    fvalue: PuiseuxSeries  # f(gamma(y), y)
    F: RelativePoly  # f(X + gamma, Y)
    base: NewtonPolygon  # NP(F_X), dots with m >= 1
    aug: AugmentedPolygon
    np_f: NewtonPolygon  # NP(F) without the X^1 line


@dataclass
class PolarArc:
    arc: ArcClass
    multiplicity: int
    data: PolarData

    @property
    def h(self):
        return self.data.h

    @property
    def a(self):
        return self.data.a

    @property
    def d(self):
        return self.data.d

    @property
    def tangent(self):
        return self.data.tangent


@dataclass
class CanyonMember:
    polar: PolarArc
    data: PolarData  # computed on the conjugate closest to the canyon's reference


@dataclass
class Canyon:
    members: list
    d: Fraction
    h: Fraction
    a: Coeff
    tangent: Coeff
    delta_top: Fraction
    aug: AugmentedPolygon
    mu: int
    branch_count: int

    @property
    def reference(self) -> PolarData:
        return self.members[0].data

    @property
    def degree_one(self) -> bool:
        return self.d <= 1


@dataclass
class Cluster:
    key: tuple  # (tangent, d, delta_top, bar label)
    canyons: list  # indices into the canyon list
    contacts: dict  # (i, j) -> Fraction
    K: dict  # canyon index -> sorted tuple of contacts
    subclusters: list  # lists of canyon indices sharing K


def _tangent(s: PuiseuxSeries) -> Coeff:
    return s.coefficient(1)


def _check_hidden(F: RelativePoly, np: NewtonPolygon, lo: int, strict=False, what="polygon"):
    for k, tau in F.uncertified():
        if k < lo:
            continue
        bound = height_at(np, k)
        if tau < bound or (strict and tau == bound):
            raise TruncationTooLow(f"{what}: coefficient of X^{k} unknown from y^{tau}")


def polar_data(f: BivarPoly, gamma: PuiseuxSeries) -> PolarData:
    """``h``, ``a``, gradient degree, ``delta_top`` and the polygons along ``gamma``."""
    F = relative(f, gamma)
    fval = F.at_zero()
    h = fval.certified_ord()
    a = fval.lc
    FX = F.derivative()
    dots = [Dot(m, q) for m, q in FX.dots() if m >= 1]
    if not dots:
        raise NoDots("f_x vanishes identically along the arc")
    base = lower_hull(dots)
    aug = augment(base, h)
    # hidden dots must not reach below the augmented polygon
    _check_hidden(FX, aug.hull, 1, what="augmented polygon")
    d = max((h - 1 - q) / m for m, q in dots)
    if d != aug.econ_coslope:
        raise AssertionError("gradient degree disagrees with the E_con co-slope")
    fdots = [Dot(0, h)] + [Dot(m, q) for m, q in F.dots() if m >= 2]
    np_f = lower_hull(fdots)
    delta_top, _ = top_edge_data(np_f, h)
    for k, tau in F.uncertified():
        if k >= 2 and tau < h - delta_top * k:
            raise TruncationTooLow(f"top edge: coefficient of X^{k} unknown from y^{tau}")
    return PolarData(gamma, h, a, d, delta_top, _tangent(gamma), fval, F, base, aug, np_f)


def gradient_degree(f: BivarPoly, gamma: PuiseuxSeries) -> Fraction:
    """Co-slope of the supporting line through ``(0, h-1)`` of ``supp F_X``."""
    return polar_data(f, gamma).d


def polar_roots(f: BivarPoly, trunc, max_degree=None):
    """``(bundle of f_x, [(ArcClass, multiplicity)] of polar classes)``.

    Roots of ``f_x`` coming from a factor that also divides ``f`` are roots of
    ``f`` and are dropped.
    """
    import sympy

    from .poly import _X, _Y

    fx = derivative_x(f)
    kwargs = {} if max_degree is None else {"max_degree": max_degree}
    bundle = puiseux_roots(fx, trunc, **kwargs)
    fs = f.to_sympy()
    polar = []
    for g, mult, classes in bundle.factors:
        if sympy.rem(fs, g.to_sympy(), _X) == 0 and sympy.Poly(g.to_sympy(), _X, _Y).degree(_X) > 0:
            continue
        polar.extend((cls, mult) for cls in classes)
    return bundle, polar


def class_contact(A: ArcClass, B: ArcClass) -> Fraction:
    """Contact order of two arc classes (max over conjugates)."""
    return max_contact(A.members, [B.representative])


def _closest_member(ref: PuiseuxSeries, B: ArcClass) -> PuiseuxSeries:
    best, best_c = None, None
    for b in B.members:
        diff = ref - b
        c = diff.terms[0][0] if diff.terms else diff.trunc
        if best_c is None or c > best_c:
            best, best_c = b, c
    return best


def _str_key(c: Coeff):
    return str(c)


def _series_key(s: PuiseuxSeries):
    return tuple((e, str(c)) for e, c in s.terms)


def build_canyons(f: BivarPoly, polars) -> tuple[list, dict]:
    """Partition polar classes into canyons.

    ``polars`` is ``[(ArcClass, multiplicity)]``.  Returns the canyons in
    canonical order and the contact matrix between canyon indices.
    """
    arcs = [PolarArc(cls, m, polar_data(f, cls.representative)) for cls, m in polars]
    arcs.sort(key=lambda p: (_str_key(p.tangent), p.d, p.h, _series_key(p.arc.representative)))
    n = len(arcs)
    contact = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = class_contact(arcs[i].arc, arcs[j].arc)
            contact[(i, j)] = contact[(j, i)] = c
    assigned = [None] * n
    groups = []
    for i in range(n):
        if assigned[i] is not None:
            continue
        grp = [i]
        assigned[i] = len(groups)
        for j in range(n):
            # contact >= 1 holds for every pair, so a degree-one canyon is kept per polar
            if j == i or arcs[i].d <= 1:
                continue
            if contact[(i, j)] >= arcs[i].d:
                if assigned[j] is not None:
                    raise InconsistentCanyon("canyon relation is not transitive")
                assigned[j] = len(groups)
                grp.append(j)
        groups.append(grp)
    canyons = []
    for grp in groups:
        canyons.append(_make_canyon(f, [arcs[i] for i in grp], polars))
    canyons.sort(key=lambda C: (_str_key(C.tangent), C.d, C.h, _series_key(C.reference.series)))
    m = len(canyons)
    ccontact = {}
    for i in range(m):
        for j in range(i + 1, m):
            c = class_contact(canyons[i].members[0].polar.arc, canyons[j].members[0].polar.arc)
            ccontact[(i, j)] = ccontact[(j, i)] = c
    return canyons, ccontact


def _make_canyon(f, arcs, polars) -> Canyon:
    ref = arcs[0]
    members = [CanyonMember(ref, ref.data)]
    for p in arcs[1:]:
        s = _closest_member(ref.arc.representative, p.arc)
        data = p.data if s is p.arc.representative else polar_data(f, s)
        members.append(CanyonMember(p, data))
    for mem in members[1:]:
        md = mem.data
        if md.d != ref.d or md.h != ref.h or not (md.a - ref.a).is_zero():
            raise InconsistentCanyon(
                f"canyon members disagree: d {ref.d} vs {md.d}, h {ref.h} vs {md.h}, "
                f"a {ref.a} vs {md.a}")
    mu = polar_multiplicity_of(ref.data.series, ref.d, polars)
    branches = sum(mem.polar.arc.size * mem.polar.multiplicity for mem in members)
    return Canyon(members, ref.d, ref.h, ref.a, ref.tangent, ref.data.delta_top, ref.data.aug,
                  mu, branches)


def polar_multiplicity_of(gamma: PuiseuxSeries, d, classes) -> int:
    """Number of individual polar roots ``gamma_i`` (with multiplicity) with ``ord(gamma_i - gamma) >= d``."""
    count = 0
    for cls, mult in classes:
        for s in cls.members:
            diff = s - gamma
            c = diff.terms[0][0] if diff.terms else diff.trunc
            if diff.terms or diff.trunc >= d:
                if c >= d:
                    count += mult
            else:
                raise TruncationTooLow("contact with a canyon member is not certified")
    return count


def polar_multiplicity(C: Canyon) -> int:
    return C.mu


def cluster(canyons, contacts) -> list:
    """Group canyons of degree > 1 by tangent, degree and Kuo-Lu bar."""
    idx = [i for i, C in enumerate(canyons) if not C.degree_one]
    parent = {i: i for i in idx}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in idx:
        for b in idx:
            if a < b:
                A, B = canyons[a], canyons[b]
                if ((A.tangent - B.tangent).is_zero() and A.d == B.d
                        and A.delta_top == B.delta_top and contacts[(a, b)] >= A.delta_top):
                    parent[find(b)] = find(a)
    groups: dict[int, list] = {}
    for i in idx:
        groups.setdefault(find(i), []).append(i)
    out = []
    labels: dict[tuple, int] = {}
    for root in sorted(groups):
        members = groups[root]
        C = canyons[members[0]]
        base_key = (str(C.tangent), C.d, C.delta_top)
        labels[base_key] = labels.get(base_key, -1) + 1
        key = base_key + (labels[base_key],)
        kk = {}
        for i in members:
            for j in members:
                if i != j:
                    k = contacts[(i, j)]
                    if k >= C.d:
                        raise InconsistentCanyon("same-degree canyons have contact >= d")
                    kk[(i, j)] = k
        K = {i: tuple(sorted(kk[(i, j)] for j in members if j != i)) for i in members}
        subs: dict[tuple, list] = {}
        for i in members:
            subs.setdefault(K[i], []).append(i)
        out.append(Cluster(key, members, kk, K, [subs[k] for k in sorted(subs)]))
    return out


@dataclass
class Analysis:
    f: BivarPoly
    trunc: Fraction
    fx_roots: RootBundle
    polars: list  # [(ArcClass, multiplicity)]
    canyons: list
    contacts: dict
    clusters: list
    notes: list = field(default_factory=list)


def analyze(f: BivarPoly, trunc, max_degree=None) -> Analysis:
    """Polar arcs, canyons and clusters of a mini-regular germ at one truncation."""
    trunc = Fraction(trunc)
    bundle, polars = polar_roots(f, trunc, max_degree)
    canyons, contacts = build_canyons(f, polars)
    return Analysis(f, trunc, bundle, polars, canyons, contacts, cluster(canyons, contacts))


# -- the definitional oracle ---------------------------------------------------

def random_unit(rng: random.Random) -> Fraction:
    while True:
        u = Fraction(rng.randint(-100, 100), rng.randint(1, 100))
        if u:
            return u


def _grad_order(fx, fy, alpha):
    ox = substitute(fx, alpha)
    oy = substitute(fy, alpha)
    return min(ox.ord_bound(), oy.ord_bound()), ox, oy


def definitional_degree(f: BivarPoly, gamma: PuiseuxSeries, rng: random.Random,
                        samples: int = 5) -> Fraction:
    """Smallest grid ``q`` with ``ord |grad f(gamma + u y^q)| == ord |grad f(gamma)|`` for sampled ``u``."""
    fx, fy = derivative_x(f), derivative_y(f)
    h = substitute(f, gamma).certified_ord()
    target = h - 1
    N = lcm(gamma.N, h.denominator)
    step = Fraction(1, N * lcm(*range(1, max(f.x_degree(), 1) + 1)))
    us = [random_unit(rng) for _ in range(samples)]
    # orders at or above h - 1 never decide stability, so later terms of gamma are dead weight
    gamma = gamma.truncate(target + 1)

    def stable(q):
        for u in us:
            alpha = gamma + PuiseuxSeries([(q, u)])
            o, ox, oy = _grad_order(fx, fy, alpha)
            if o < target:
                if not ((ox.terms and ox.terms[0][0] == o) or (oy.terms and oy.terms[0][0] == o)):
                    raise TruncationTooLow("gradient order not certified")
                return False
        return True

    lo = int(1 / step)  # q = 1
    hi = int(max(target, Fraction(1)) / step)
    if not stable(hi * step):
        raise AssertionError("perturbation at the top of the range changes the gradient order")
    if stable(lo * step):
        return lo * step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if stable(mid * step):
            hi = mid
        else:
            lo = mid
    return hi * step
