"""Bivariate polynomial germs ``f(x, y)`` and relative expansions ``f(X + gamma(Y), Y)``."""

from __future__ import annotations

import re
from fractions import Fraction

import sympy

from .arith import Coeff, FieldTower, QQ, as_coeff
from .errors import NotMiniRegular, ParseError, ZeroPolynomial
from .series import INF, PuiseuxSeries

_X, _Y = sympy.symbols("x y")


class BivarPoly:
    """Sparse polynomial ``sum c_ij x^i y^j`` with nonzero :class:`Coeff` entries."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        acc: dict[tuple[int, int], Coeff] = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            c = as_coeff(c)
            acc[(i, j)] = acc[(i, j)] + c if (i, j) in acc else c
        self.terms = {k: v for k, v in acc.items() if not v.is_zero()}

    @classmethod
    def constant(cls, c) -> "BivarPoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "BivarPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BivarPoly":
        return cls({(0, 1): 1})

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, BivarPoly):
            return other
        try:
            return BivarPoly.constant(as_coeff(other))
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self.terms)
        for k, c in o.terms.items():
            acc[k] = acc[k] + c if k in acc else c
        return BivarPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc: dict[tuple[int, int], Coeff] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                k = (i1 + i2, j1 + j2)
                t = c1 * c2
                acc[k] = acc[k] + t if k in acc else t
        return BivarPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = BivarPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- data -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def tower(self) -> FieldTower:
        t = QQ
        for c in self.terms.values():
            t = t.join(c.tower)
        return t

    def x_degree(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def order(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no order")
        return min(i + j for i, j in self.terms)

    def coefficient(self, i: int, j: int) -> Coeff:
        return self.terms.get((i, j), QQ.zero())

    def support(self):
        return sorted(self.terms)

    def y_coefficients(self):
        """``{i: P_i(y)}`` with ``f = sum_i P_i(y) x^i`` and ``P_i`` exact series."""
        rows: dict[int, list] = {}
        for (i, j), c in self.terms.items():
            rows.setdefault(i, []).append((j, c))
        return {i: PuiseuxSeries(rows[i]) for i in rows}

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"BivarPoly({render(self)})"

    # -- conversions ------------------------------------------------------
    def to_sympy(self) -> sympy.Expr:
        expr = sympy.Integer(0)
        for (i, j), c in self.terms.items():
            r = c.to_rational()
            expr += sympy.Rational(r.numerator, r.denominator) * _X**i * _Y**j
        return expr

    @classmethod
    def from_sympy(cls, expr) -> "BivarPoly":
        p = sympy.Poly(sympy.expand(expr), _X, _Y, domain="QQ")
        terms = {}
        for (i, j), c in p.terms():
            num, den = sympy.fraction(c)
            terms[(int(i), int(j))] = Fraction(int(num), int(den))
        return cls(terms)


def render(f: BivarPoly) -> str:
    if not f.terms:
        return "0"
    parts = []
    for (i, j) in sorted(f.terms, key=lambda k: (k[0] + k[1], -k[0])):
        c = f.terms[(i, j)]
        mono = "*".join(
            s for s in (
                "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
            ) if s)
        cs = str(c)
        if not c.is_rational():
            cs = f"({cs})"
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        elif cs == "-1":
            parts.append("-" + mono)
        else:
            parts.append(f"{cs}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at position {pos}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num), m.start(1)))
        elif name is not None:
            out.append(("name", name, m.start(2)))
        else:
            out.append(("op", "^" if op == "**" else op, m.start(3)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, params: dict):
        self.toks = _tokenize(text)
        self.i = 0
        self.params = params
        self.used: set[str] = set()

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", None, -1)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] == "end":
            raise ParseError("unexpected end of input")
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"unexpected token {tok[1]!r} at position {tok[2]}")
        self.i += 1
        return tok

    def parse(self) -> BivarPoly:
        if not self.toks:
            raise ParseError("empty polynomial")
        out = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            raise ParseError(f"unexpected token {tok[1]!r} at position {tok[2]}")
        return out

    def expr(self):
        acc = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
            else:
                if set(rhs.terms) - {(0, 0)} or not rhs.terms:
                    raise ParseError("division is only allowed by a nonzero constant")
                acc = acc * rhs.terms[(0, 0)].inverse()
        return acc

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            if self.peek()[:2] == ("op", "("):
                self.take()
                exp = self.take("num")[1]
                self.take("op", ")")
            else:
                exp = self.take("num")[1]
            return base ** exp
        return base

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return BivarPoly.constant(val)
        if kind == "name":
            self.take()
            if val == "x":
                return BivarPoly.x()
            if val == "y":
                return BivarPoly.y()
            if val in self.params:
                self.used.add(val)
                return BivarPoly.constant(self.params[val])
            raise ParseError(f"unbound parameter {val!r} at position {pos}")
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input")
        raise ParseError(f"unexpected token {val!r} at position {pos}")


def parse(text: str, params: dict | None = None) -> BivarPoly:
    """Parse ``c*x^i*y^j + ...``; names other than ``x``, ``y`` must be bound in ``params``."""
    params = {k: Fraction(v) for k, v in (params or {}).items()}
    for k in params:
        if k in ("x", "y"):
            raise ParseError("x and y cannot be parameters")
    return _Parser(text, params).parse()


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


# -- germ operations ---------------------------------------------------------

def derivative_x(f: BivarPoly) -> BivarPoly:
    return BivarPoly({(i - 1, j): c * i for (i, j), c in f.terms.items() if i > 0})


def derivative_y(f: BivarPoly) -> BivarPoly:
    return BivarPoly({(i, j - 1): c * j for (i, j), c in f.terms.items() if j > 0})


def mini_regular_order(f: BivarPoly) -> int:
    """``ord f`` when the initial form does not vanish at ``(1, 0)``."""
    m = f.order()
    if (m, 0) not in f.terms:
        raise NotMiniRegular(f"initial form of degree {m} vanishes at (1,0)")
    return m


def is_mini_regular(f: BivarPoly) -> bool:
    try:
        mini_regular_order(f)
    except NotMiniRegular:
        return False
    return True


def shear(f: BivarPoly, lam) -> BivarPoly:
    """``f(x, y + lam*x)``; the initial form becomes ``f_m(1, lam)`` at ``(1, 0)``."""
    sub = BivarPoly.y() + BivarPoly.x() * as_coeff(lam)
    out = BivarPoly()
    powers = {0: BivarPoly.constant(1)}
    for (i, j), c in f.terms.items():
        if j not in powers:
            powers[j] = sub ** j
        out = out + powers[j] * BivarPoly({(i, 0): c})
    return out


def make_mini_regular(f: BivarPoly):
    """Return ``(g, lam)`` with ``g = shear(f, lam)`` mini-regular, ``lam`` minimal >= 0."""
    lam = 0
    g = f
    while not is_mini_regular(g):
        lam += 1
        g = shear(f, lam)
        if lam > 64:
            raise NotMiniRegular("no small shear makes the germ mini-regular")
    return g, lam


def strip_common_factor(f: BivarPoly):
    """``(f / g, g)`` where ``g = gcd(f, f_x)`` normalized monic in ``x``.

    Roots of ``g`` are roots of both ``f`` and ``f_x``; they are not polar arcs.
    """
    if not f.is_rational():
        raise NotImplementedError("gcd preprocessing needs rational coefficients")
    fs = f.to_sympy()
    g = sympy.gcd(fs, sympy.diff(fs, _X))
    gp = sympy.Poly(g, _X, _Y)
    if gp.degree(_X) <= 0:
        return f, BivarPoly.constant(1)
    lc = sympy.Poly(g, _X).LC()
    g = sympy.expand(g / lc)
    q = sympy.cancel(fs / g)
    return BivarPoly.from_sympy(q), BivarPoly.from_sympy(g)


def factor_rational(f: BivarPoly):
    """Irreducible factorization over ``Q[x, y]``: ``(unit, [(factor, multiplicity)])``."""
    if f.is_zero():
        raise ZeroPolynomial("cannot factor zero")
    unit, facs = sympy.factor_list(f.to_sympy(), _X, _Y)
    num, den = sympy.fraction(sympy.Rational(unit))
    return Fraction(int(num), int(den)), [(BivarPoly.from_sympy(g), int(k)) for g, k in facs]


# -- relative polynomials ------------------------------------------------------

class RelativePoly:
    """``F(X, Y) = sum_m c_m(Y) X^m`` with truncated Puiseux coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = {m: c for m, c in coeffs.items() if c.terms or not c.is_exact}

    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def coefficient(self, m: int) -> PuiseuxSeries:
        return self.coeffs.get(m, PuiseuxSeries.zero())

    def at_zero(self) -> PuiseuxSeries:
        """``F(0, Y)``."""
        return self.coefficient(0)

    def derivative(self) -> "RelativePoly":
        return RelativePoly({m - 1: c * m for m, c in self.coeffs.items() if m > 0})

    def dots(self):
        """Support as ``(m, q)`` pairs, ``q`` the first known exponent of ``c_m``."""
        return sorted((m, c.terms[0][0]) for m, c in self.coeffs.items() if c.terms)

    def uncertified(self):
        """``(m, trunc)`` for coefficients with no known term below a finite truncation."""
        return sorted((m, c.trunc) for m, c in self.coeffs.items() if not c.terms)

    def truncate(self, t) -> "RelativePoly":
        return RelativePoly({m: c.truncate(t) for m, c in self.coeffs.items()})

    def shift(self, gamma: PuiseuxSeries, limit=INF) -> "RelativePoly":
        """``F(X + gamma, Y)`` with coefficients truncated at ``limit``."""
        acc: list[PuiseuxSeries] = []
        for m in range(self.degree(), -1, -1):
            # acc = acc * (X + gamma) + c_m
            new = [None] * (len(acc) + 1)
            for k, s in enumerate(acc):
                new[k + 1] = s if new[k + 1] is None else new[k + 1] + s
                t = (s * gamma).truncate(limit)
                new[k] = t if new[k] is None else new[k] + t
            c = self.coefficient(m).truncate(limit)
            new[0] = c if new[0] is None else new[0] + c
            acc = new
        return RelativePoly(dict(enumerate(acc)))

    def __eq__(self, other):
        if not isinstance(other, RelativePoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        inner = ", ".join(f"X^{m}: {c}" for m, c in sorted(self.coeffs.items()))
        return f"RelativePoly({{{inner}}})"


def as_relative(f: BivarPoly) -> RelativePoly:
    return RelativePoly(f.y_coefficients())


def relative(f: BivarPoly, gamma: PuiseuxSeries, limit=INF) -> RelativePoly:
    """``F(X, Y) = f(X + gamma(Y), Y)``, coefficients truncated at ``limit``."""
    return as_relative(f).shift(gamma, limit)


def substitute(f: BivarPoly, gamma: PuiseuxSeries, limit=INF) -> PuiseuxSeries:
    """``f(gamma(y), y)`` as a truncated series."""
    acc = None
    coeffs = f.y_coefficients()
    for m in range(f.x_degree(), -1, -1):
        c = coeffs.get(m, PuiseuxSeries.zero())
        acc = c if acc is None else (acc * gamma).truncate(limit) + c
    return (acc if acc is not None else PuiseuxSeries.zero()).truncate(limit)
