"""Independent brute-force checks shared by the test modules."""

from __future__ import annotations

from canyonlab.poly import BivarPoly, as_relative, derivative_x, derivative_y, substitute
from canyonlab.series import PuiseuxSeries


def root_product(roots) -> dict:
    """``prod (X - r)^mult`` as ``{k: series}`` for ``[(series, mult)]``."""
    poly = {0: PuiseuxSeries.monomial(1, 0)}
    for r, mult in roots:
        for _ in range(mult):
            nxt: dict = {}
            for k, s in poly.items():
                nxt[k + 1] = nxt.get(k + 1, PuiseuxSeries.zero()) + s
                nxt[k] = nxt.get(k, PuiseuxSeries.zero()) - s * r
            poly = nxt
    return poly


def divide_monic(num: dict, den: dict):
    """Long division in ``X`` by a monic divisor; returns ``(quotient, remainder)``."""
    num = dict(num)
    dd = max(den)
    quot = {}
    for k in sorted(num, reverse=True):
        if k < dd or k not in num:
            continue
        c = num.pop(k)
        if c.is_zero() and c.is_exact:
            continue
        quot[k - dd] = c
        for j, s in den.items():
            if j == dd:
                continue
            num[k - dd + j] = num.get(k - dd + j, PuiseuxSeries.zero()) - c * s
    return quot, num


def reconstruction_remainder(f: BivarPoly, bundle):
    """Remainder of ``f`` modulo the product of its positive-order roots."""
    F = as_relative(f).coeffs
    P = root_product(bundle.all_members())
    _, rem = divide_monic(F, P)
    return rem


def grad_order(f: BivarPoly, alpha: PuiseuxSeries):
    """Certified ``ord |grad f(alpha(y), y)|`` or ``None``."""
    ox = substitute(derivative_x(f), alpha)
    oy = substitute(derivative_y(f), alpha)
    o = min(ox.ord_bound(), oy.ord_bound())
    ok = (ox.terms and ox.terms[0][0] == o) or (oy.terms and oy.terms[0][0] == o)
    return o if ok else None


def normalized_value(f: BivarPoly, s: PuiseuxSeries) -> PuiseuxSeries:
    v = substitute(f, s)
    return v * v.lc.inverse()


def brute_h_min(f: BivarPoly, members_a, members_b, delta):
    """Least ``ord(f(a)/lc - f(b)/lc)`` over pairs at contact exactly ``delta``.

    Returns ``None`` if no pair has a certified difference.
    """
    best = None
    for a in members_a:
        for b in members_b:
            if a is b:
                continue
            d = a - b
            if not d.terms or d.terms[0][0] != delta:
                continue
            diff = normalized_value(f, a) - normalized_value(f, b)
            if diff.terms:
                H = diff.terms[0][0]
                best = H if best is None or H < best else best
    return best
