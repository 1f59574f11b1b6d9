"""Newton-Puiseux roots of ``f(x, y)`` in ``x``, certified below a truncation order."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import Coeff, FieldTower, QQ
from .errors import TruncationTooLow
from .poly import BivarPoly, RelativePoly, as_relative, factor_rational
from .polygon import Dot, Edge, lower_hull
from .series import INF, PuiseuxSeries
from . import upoly

#: default cap on the degree of the coefficient tower
MAX_TOWER_DEGREE = 512


@dataclass(frozen=True)
class ArcClass:
    """An irreducible arc: a representative and all of its explicit conjugates."""

    representative: PuiseuxSeries
    members: tuple

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def exact(self) -> bool:
        return self.representative.is_exact


@dataclass
class RootBundle:
    roots: list  # [(ArcClass, multiplicity)]
    tower: FieldTower
    trunc: Fraction
    degree: int  # Weierstrass degree accounted for
    unit: object = None
    factors: list = field(default_factory=list)  # [(BivarPoly, multiplicity, [ArcClass])]

    def all_members(self):
        """Every explicit root series with its multiplicity."""
        return [(s, m) for cls, m in self.roots for s in cls.members]

    def count(self) -> int:
        return sum(cls.size * m for cls, m in self.roots)


@dataclass(frozen=True)
class FacePolynomial:
    edge: Edge
    coefficients: tuple  # lowest power first, Z^(k - m_left)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


def face_polynomial(F: RelativePoly, edge: Edge) -> FacePolynomial:
    """``P(Z)`` with ``F(z*y^s, y) = P(z) z^m_left y^l + ...`` along ``edge``."""
    s = edge.coslope
    level = edge.left.q + s * edge.left.m
    coeffs = []
    for k in range(edge.left.m, edge.right.m + 1):
        q = level - s * k
        coeffs.append(F.coefficient(k).coefficient(q) if q >= 0 else QQ.zero())
    return FacePolynomial(edge, tuple(coeffs))


def weierstrass_degree(F: RelativePoly) -> int:
    """Number of roots of positive order: least ``k`` with ``c_k(0) != 0``."""
    for k in range(F.degree() + 1):
        c = F.coefficient(k)
        if c.terms and c.terms[0][0] == 0:
            return k
    return 0


# -- the iteration ---------------------------------------------------------------

class _State:
    def __init__(self, tower: FieldTower, T: Fraction, max_degree):
        self.tower = tower
        self.T = T
        self.max_degree = max_degree
        self.roots: list[tuple[PuiseuxSeries, int]] = []


def _prune(F: RelativePoly, s, W) -> RelativePoly:
    """Drop terms ``(k, e)`` with ``e + k*s >= W``; they cannot reach an edge below the cap."""
    out = {}
    for k, c in F.coeffs.items():
        out[k] = c.truncate(W - k * s)
    return RelativePoly(out)


def _shift(F: RelativePoly, z: Coeff, s) -> RelativePoly:
    return F.shift(PuiseuxSeries([(s, z)]))


def _solve_cluster(F: RelativePoly, prefix: tuple, r: int, delta, W, st: _State):
    T = st.T
    # exact root at the current prefix
    j = 0
    while j < r and F.coefficient(j).is_exact and not F.coefficient(j).terms:
        j += 1
    if j:
        st.roots.append((PuiseuxSeries(prefix), j))
        F = RelativePoly({k - j: c for k, c in F.coeffs.items() if k >= j})
        r -= j
    if r == 0:
        return
    top = F.coefficient(r)
    if not top.terms:
        raise TruncationTooLow("cluster vertex coefficient is not certified")
    dots = [Dot(k, F.coefficient(k).terms[0][0]) for k in range(r + 1) if F.coefficient(k).terms]
    hull = lower_hull(dots)
    low = [e for e in hull.edges if e.coslope < T]
    for e in hull.edges:
        if e.coslope <= delta:
            raise AssertionError("edge co-slope does not exceed the previous exponent")
    if low:
        m_star, q_star = low[0].left
    else:
        m_star, q_star = r, top.terms[0][0]
    # hidden coefficients must sit strictly above everything that is used
    for k, tau in F.uncertified():
        if k > r:
            continue
        if k < m_star:
            bound = q_star + T * (m_star - k)
            ok = tau >= bound
        else:
            e = next(e for e in low if e.left.m <= k <= e.right.m)
            bound = e.left.q - e.coslope * (k - e.left.m)
            ok = tau > bound
        if not ok:
            raise TruncationTooLow(
                f"coefficient of X^{k} unknown from y^{tau}; raise the truncation")
    if m_star == 1:
        st.roots.append((PuiseuxSeries(prefix, T), 1))
    elif m_star >= 2:
        raise TruncationTooLow(
            f"{m_star} roots agree below y^{T}; raise the truncation to separate them")
    for e in low:
        P = list(face_polynomial(F, e).coefficients)
        st.tower, zs = upoly.split_roots(P, st.tower, max_degree=st.max_degree)
        s = e.coslope
        level = e.left.q + s * e.left.m
        for z, mu in zs:
            if z.is_zero():
                continue
            W2 = level + mu * (T - s)
            G = _shift(_prune(F, s, W2), z, s)
            _solve_cluster(G, prefix + ((s, z),), mu, s, W2, st)


def _roots_of_relative(F: RelativePoly, T, tower, max_degree):
    st = _State(tower, Fraction(T), max_degree)
    w = weierstrass_degree(F)
    if w:
        _solve_cluster(_prune(F, 0, w * st.T), (), w, Fraction(0), w * st.T, st)
    return st.roots, st.tower, w


# -- conjugacy ---------------------------------------------------------------------

def _ext_gcd_coeffs(nums, N):
    """Integers ``c_i`` with ``sum c_i nums_i == 1 (mod N)`` (requires gcd(nums, N) = 1)."""
    # invariant: g == sum(coeffs_i * nums_i) (mod N)
    g, coeffs = N, [0] * len(nums)
    for i, n in enumerate(nums):
        d, u, v = _egcd(g, n)
        coeffs = [c * u for c in coeffs]
        coeffs[i] += v
        g = d
    return coeffs


def _egcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _conjugate_of(a: PuiseuxSeries, b: PuiseuxSeries) -> bool:
    if a.trunc != b.trunc or len(a.terms) != len(b.terms):
        return False
    if any(ea != eb for (ea, _), (eb, _) in zip(a.terms, b.terms)):
        return False
    N = a.N
    if N == 1:
        return a == b
    nums = [int(e * N) for e, _ in a.terms]
    cs = _ext_gcd_coeffs(nums, N)
    zeta = None
    for (e, ca), (_, cb), c in zip(a.terms, b.terms, cs):
        ratio = cb / ca
        term = ratio ** (c % N) if c % N else None
        if term is not None:
            zeta = term if zeta is None else zeta * term
    if zeta is None:
        zeta = QQ.one()
    if not (zeta ** N - 1).is_zero():
        return False
    return all((cb - ca * zeta ** ((n) % N)).is_zero()
               for (_, ca), (_, cb), n in zip(a.terms, b.terms, nums))


def group_conjugates(series):
    """Partition explicit root series into conjugacy classes."""
    left = list(series)
    classes = []
    while left:
        a = left.pop(0)
        members = [a]
        rest = []
        for b in left:
            (members if _conjugate_of(a, b) else rest).append(b)
        left = rest
        if len(members) != a.N:
            raise TruncationTooLow(
                f"found {len(members)} conjugates of a root with denominator {a.N}")
        classes.append(ArcClass(a, tuple(members)))
    return classes


def _canonical_key(s: PuiseuxSeries):
    return tuple((e, str(c)) for e, c in s.terms)


# -- public entry points -----------------------------------------------------------

def puiseux_roots(f, trunc, tower: FieldTower | None = None,
                  max_degree: int | None = MAX_TOWER_DEGREE) -> RootBundle:
    """All roots of positive order of ``f`` in ``x``, certified below ``y^trunc``.

    Rational bivariate input is first split into irreducible factors so that
    Newton-Puiseux runs on squarefree data; multiplicities are reattached.
    """
    T = Fraction(trunc)
    if isinstance(f, RelativePoly):
        t = tower or QQ
        raw, t, w = _roots_of_relative(f, T, t, max_degree)
        by_mult: dict[int, list] = {}
        for s, m in raw:
            by_mult.setdefault(m, []).append(s)
        roots = [(cls, m) for m, ss in sorted(by_mult.items()) for cls in group_conjugates(ss)]
        roots.sort(key=lambda cm: _canonical_key(cm[0].representative))
        return RootBundle(roots, t, T, w)
    if not isinstance(f, BivarPoly):
        raise TypeError("expected a BivarPoly or RelativePoly")
    t = tower or f.tower()
    if f.is_rational():
        unit, facs = factor_rational(f)
    else:
        unit, facs = 1, [(f, 1)]
    roots, factors, total = [], [], 0
    for g, mult in facs:
        raw, t, w = _roots_of_relative(as_relative(g), T, t, max_degree)
        if not w:
            continue
        if any(m != 1 for _, m in raw):
            raise AssertionError("irreducible factor produced a repeated root")
        classes = group_conjugates([s for s, _ in raw])
        factors.append((g, mult, classes))
        roots.extend((cls, mult) for cls in classes)
        total += w * mult
    roots.sort(key=lambda cm: _canonical_key(cm[0].representative))
    return RootBundle(roots, t, T, total, unit, factors)


def _extends(s: PuiseuxSeries, gamma: PuiseuxSeries) -> bool:
    """Whether ``s`` agrees with every known term of ``gamma``."""
    if gamma.is_exact:
        cut = gamma.terms[-1][0] if gamma.terms else Fraction(0)
        known = [t for t in s.terms if t[0] <= cut]
        return s.trunc > cut and tuple(known) == gamma.terms
    known = tuple(t for t in s.terms if t[0] < gamma.trunc)
    return s.trunc >= gamma.trunc and known == gamma.terms


def expand_along(f, gamma: PuiseuxSeries, target_trunc, max_degree=MAX_TOWER_DEGREE) -> PuiseuxSeries:
    """Extend a certified root prefix of ``f`` to ``target_trunc`` (or to its exact end)."""
    bundle = puiseux_roots(f, target_trunc, tower=gamma.tower(), max_degree=max_degree)
    for s, _ in bundle.all_members():
        if _extends(s, gamma):
            return s
    raise ValueError("the given series is not a root prefix of f")
