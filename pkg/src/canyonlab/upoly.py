"""Univariate polynomials over a coefficient tower, with exact factoring.

Polynomials are plain lists of :class:`Coeff`, lowest degree first, with no
trailing zeros.  Factoring over the rationals is delegated to sympy; over an
extension it uses Trager's norm method one level at a time.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import count

import sympy

from .arith import Coeff, FieldTower, QQ, adjoin_root, as_coeff
from .errors import DivisionByZero, ExtensionTooLarge


def trim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def lift(p, tower: FieldTower):
    return [as_coeff(c, tower).lift(tower) for c in p]


def deg(p) -> int:
    return len(p) - 1


def add(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        if i >= len(a):
            out.append(b[i])
        elif i >= len(b):
            out.append(a[i])
        else:
            out.append(a[i] + b[i])
    return trim(out)


def sub(a, b):
    return add(a, [-c for c in b])


def scale(p, c):
    return trim([x * c for x in p])


def mul(a, b):
    if not a or not b:
        return []
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            t = x * y
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    zero = (a[0] * 0)
    return trim([zero if c is None else c for c in out])


def monic(p):
    if not p:
        raise DivisionByZero("zero polynomial has no leading coefficient")
    inv = p[-1].inverse()
    return [c * inv for c in p[:-1]] + [p[-1] * inv]


def divmod_(a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    inv = b[-1].inverse()
    q = [None] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = a[shift + i] - c * y
        a.pop()
        a = trim(a)
    zero = b[-1] * 0
    return trim([zero if c is None else c for c in q]), a


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a) if a else []


def deriv(p):
    return trim([p[i] * i for i in range(1, len(p))])


def evaluate(p, x):
    acc = None
    for c in reversed(p):
        acc = c if acc is None else acc * x + c
    return acc if acc is not None else as_coeff(0) * x


def shift(p, c):
    """Return ``p(Z + c)``."""
    out = []
    for a in reversed(p):
        # out = out * (Z + c) + a
        new = [None] * (len(out) + 1)
        for i, y in enumerate(out):
            new[i + 1] = y if new[i + 1] is None else new[i + 1] + y
            t = y * c
            new[i] = t if new[i] is None else new[i] + t
        new[0] = a if new[0] is None else new[0] + a
        out = new
    return trim(out)


def squarefree_decomposition(p):
    """Yun's algorithm: list of ``(monic squarefree factor, multiplicity)``."""
    p = monic(trim(p))
    if deg(p) < 1:
        return []
    out = []
    dp = deriv(p)
    a = gcd(p, dp)
    b = divmod_(p, a)[0]
    c = divmod_(dp, a)[0]
    d = sub(c, deriv(b))
    i = 1
    while deg(b) > 0:
        a = gcd(b, d)
        if deg(a) > 0:
            out.append((a, i))
        b = divmod_(b, a)[0]
        c = divmod_(d, a)[0]
        d = sub(c, deriv(b))
        i += 1
    return out


def interpolate(xs, ys):
    """Newton interpolation through ``(xs[i], ys[i])`` with rational nodes."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * Fraction(1, xs[i] - xs[i - j])
    poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        # poly = poly * (Z - xs[i]) + coef[i]
        poly = add(mul(poly, [coef[i] * 0 - xs[i], coef[i] * 0 + 1]), [coef[i]])
    return trim(poly)


def norm(p, tower: FieldTower):
    """Norm of ``p`` from ``tower`` down to ``tower.base`` (a polynomial there)."""
    d = tower.levels[-1].degree
    n = deg(p) * d
    xs = list(range(n + 1))
    ys = [evaluate(p, tower(x)).norm_down() for x in xs]
    return interpolate(xs, ys)


def _factor_rational(p):
    z = sympy.Symbol("Z")
    coeffs = [c.to_rational() for c in reversed(p)]
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], z, domain="QQ")
    _, facs = poly.factor_list()
    out = []
    for f, _m in facs:
        cs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in f.all_coeffs()]
        out.append(monic([QQ(c) for c in reversed(cs)]))
    return out


def _factor_squarefree(p, tower: FieldTower):
    p = monic(lift(p, tower))
    if deg(p) <= 1:
        return [p]
    if tower.depth == 0:
        return _factor_rational(p)
    theta = tower.generator()
    base = tower.base
    for s in _shifts():
        q = shift(p, -s * theta)
        n = norm(q, tower)
        if deg(gcd(n, deriv(n))) > 0:
            continue
        parts = []
        for nj in _factor_squarefree(n, base):
            g = gcd(p, shift(lift(nj, tower), s * theta))
            if deg(g) > 0:
                parts.append(g)
        return parts
    raise AssertionError("unreachable")


def _shifts():
    yield 0
    for k in count(1):
        yield k
        yield -k


def factor(p, tower: FieldTower | None = None):
    """Factor ``p`` into monic irreducibles over ``tower``.

    Returns ``(leading coefficient, [(factor, multiplicity), ...])``.
    """
    p = trim(p)
    if tower is None:
        tower = QQ
        for c in p:
            tower = tower.join(c.tower)
    p = lift(p, tower)
    lc = p[-1]
    out = []
    for part, mult in squarefree_decomposition(p):
        for f in _factor_squarefree(part, tower):
            out.append((f, mult))
    out.sort(key=lambda fm: (deg(fm[0]), fm[1]))
    return lc, out


def cyclotomic(M: int, tower: FieldTower = QQ):
    z = sympy.Symbol("Z")
    cs = sympy.Poly(sympy.cyclotomic_poly(M, z), z).all_coeffs()
    return [tower(int(c)) for c in reversed(cs)]


def split_roots(p, tower: FieldTower, max_degree: int | None = None, name_prefix: str | None = None):
    """All roots of ``p`` with multiplicity, extending ``tower`` as needed.

    Returns ``(tower, [(root, multiplicity), ...])``; every root lives in the
    returned tower, which extends the input one.
    """
    p = trim(lift(p, tower))
    if deg(p) == 1:
        return tower, [(-p[0] / p[1], 1)]
    _, facs = factor(p, tower)
    pending = [(f, m, tower) for f, m in facs]
    roots = []
    while pending:
        f, m, over = pending.pop()
        if deg(f) == 1:
            roots.append((-f[0] / f[1], m))
            continue
        if not over.same_as(tower):
            _, sub_facs = factor(f, tower)
            if len(sub_facs) > 1 or deg(sub_facs[0][0]) < deg(f):
                pending.extend((g, m * k, tower) for g, k in sub_facs)
                continue
        if max_degree is not None and tower.degree * deg(f) > max_degree:
            raise ExtensionTooLarge(
                f"splitting needs a tower of degree {tower.degree * deg(f)} > {max_degree}")
        name = None if name_prefix is None else f"{name_prefix}{tower.depth + 1}"
        tower, theta = adjoin_root(tower, f, name=name, check=False)
        roots.append((theta, m))
        rest = divmod_(lift(f, tower), [-theta, tower.one()])[0]
        if deg(rest) >= 1:
            _, sub_facs = factor(rest, tower)
            pending.extend((g, m * k, tower) for g, k in sub_facs)
    return tower, roots


def split_one_root(p, tower: FieldTower, name: str | None = None, max_degree: int | None = None):
    """One root of ``p``: a rational/tower root if any, else adjoin one."""
    _, facs = factor(p, tower)
    for f, _m in facs:
        if deg(f) == 1:
            return tower, -f[0] / f[1]
    f = facs[0][0]
    if max_degree is not None and tower.degree * deg(f) > max_degree:
        raise ExtensionTooLarge(f"tower degree would exceed {max_degree}")
    return adjoin_root(tower, f, name=name, check=False)
