"""Truncated Puiseux series in ``y`` with exact coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .arith import Coeff, FieldTower, QQ, as_coeff, root_of_unity
from .errors import SameArc, TruncationTooLow

#: order of a series with no terms; also the truncation of an exact series
INF = math.inf


def _rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class PuiseuxSeries:
    """``sum a_i y^(e_i)`` with every term of exponent ``>= trunc`` unknown.

    ``terms`` is a tuple of ``(exponent, coefficient)`` pairs with strictly
    increasing exponents below ``trunc`` and nonzero coefficients.  An exact
    (terminating) series has ``trunc == INF``.
    """

    __slots__ = ("terms", "trunc")

    def __init__(self, terms=(), trunc=INF):
        trunc = trunc if trunc == INF else _rat(trunc)
        acc: dict[Fraction, Coeff] = {}
        for e, c in terms:
            e = _rat(e)
            if e >= trunc:
                continue
            c = as_coeff(c)
            acc[e] = acc[e] + c if e in acc else c
        self.terms = tuple((e, acc[e]) for e in sorted(acc) if not acc[e].is_zero())
        self.trunc = trunc

    @classmethod
    def _raw(cls, terms, trunc):
        s = cls.__new__(cls)
        s.terms = terms
        s.trunc = trunc
        return s

    @classmethod
    def monomial(cls, c, e, trunc=INF) -> "PuiseuxSeries":
        return cls([(e, c)], trunc)

    @classmethod
    def zero(cls, trunc=INF) -> "PuiseuxSeries":
        return cls((), trunc)

    # -- basic data -------------------------------------------------------
    def ord(self):
        """Exponent of the first known term, ``INF`` if none is known."""
        return self.terms[0][0] if self.terms else INF

    def ord_bound(self):
        """A certified lower bound for the true order."""
        return self.terms[0][0] if self.terms else self.trunc

    def certified_ord(self) -> Fraction:
        if self.terms:
            return self.terms[0][0]
        if self.trunc == INF:
            return INF
        raise TruncationTooLow(f"no term below y^{self.trunc}; order is not certified")

    @property
    def lc(self) -> Coeff:
        if not self.terms:
            raise TruncationTooLow("series has no known leading term")
        return self.terms[0][1]

    @property
    def N(self) -> int:
        """Puiseux multiplicity: the normalized common denominator."""
        n = 1
        for e, _ in self.terms:
            n = n * e.denominator // math.gcd(n, e.denominator)
        return n

    @property
    def is_exact(self) -> bool:
        return self.trunc == INF

    def is_zero(self) -> bool:
        return not self.terms

    def tower(self) -> FieldTower:
        t = QQ
        for _, c in self.terms:
            t = t.join(c.tower)
        return t

    def coefficient(self, e) -> Coeff:
        e = _rat(e)
        if e >= self.trunc:
            raise TruncationTooLow(f"coefficient of y^{e} lies beyond truncation y^{self.trunc}")
        for ee, c in self.terms:
            if ee == e:
                return c
        return QQ.zero()

    def truncate(self, t) -> "PuiseuxSeries":
        """Drop terms of exponent ``>= t``; exactness survives if nothing is dropped."""
        if t >= self.trunc:
            return self
        if self.trunc == INF and (not self.terms or self.terms[-1][0] < t):
            return self
        return PuiseuxSeries._raw(tuple(x for x in self.terms if x[0] < t), _rat(t))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, PuiseuxSeries):
            return other
        if isinstance(other, (int, Rational, Coeff)):
            c = as_coeff(other)
            return PuiseuxSeries._raw(() if c.is_zero() else ((Fraction(0), c),), INF)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PuiseuxSeries(self.terms + o.terms, min(self.trunc, o.trunc))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries._raw(tuple((e, -c) for e, c in self.terms), self.trunc)

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
        if isinstance(other, (int, Rational, Coeff)):
            c = as_coeff(other)
            if c.is_zero():
                return PuiseuxSeries.zero(INF)
            return PuiseuxSeries._raw(tuple((e, a * c) for e, a in self.terms), self.trunc)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        trunc = min(self.trunc + other.ord_bound(), other.trunc + self.ord_bound())
        acc: dict[Fraction, Coeff] = {}
        for e1, c1 in self.terms:
            if e1 + other.ord_bound() >= trunc:
                break
            for e2, c2 in other.terms:
                e = e1 + e2
                if e >= trunc:
                    break
                t = c1 * c2
                acc[e] = acc[e] + t if e in acc else t
        terms = tuple((e, acc[e]) for e in sorted(acc) if not acc[e].is_zero())
        return PuiseuxSeries._raw(terms, trunc if trunc == INF else _rat(trunc))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = PuiseuxSeries._raw(((Fraction(0), QQ.one()),), INF)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift_exponent(self, e) -> "PuiseuxSeries":
        """Multiply by ``y^e``."""
        e = _rat(e)
        return PuiseuxSeries._raw(tuple((x + e, c) for x, c in self.terms), self.trunc + e)

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        if self.trunc != other.trunc or len(self.terms) != len(other.terms):
            return False
        return all(e1 == e2 and c1 == c2 for (e1, c1), (e2, c2) in zip(self.terms, other.terms))

    def __hash__(self):
        return hash((self.terms, self.trunc))

    # -- conjugation ------------------------------------------------------
    def conjugate(self, eps: Coeff, k: int) -> "PuiseuxSeries":
        """Coefficients ``a_i * eps^(k n_i)`` where ``e_i = n_i / N``."""
        n = self.N
        return PuiseuxSeries._raw(
            tuple((e, c * eps ** ((k * int(e * n)) % n)) for e, c in self.terms), self.trunc)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"PuiseuxSeries({render(self)})"


def _exp_str(e: Fraction) -> str:
    if e.denominator == 1:
        return str(e.numerator)
    return f"({e.numerator}/{e.denominator})"


def render(s: PuiseuxSeries) -> str:
    """Human-readable ``c*y^(p/q) + ...`` with an ``O(y^t)`` tail."""
    parts = []
    for e, c in s.terms:
        cs = str(c)
        if not c.is_rational() and (" " in cs):
            cs = f"({cs})"
        if e == 0:
            parts.append(cs)
            continue
        mon = "y" if e == 1 else f"y^{_exp_str(e)}"
        if cs == "1":
            parts.append(mon)
        elif cs == "-1":
            parts.append("-" + mon)
        else:
            parts.append(f"{cs}*{mon}")
    if s.trunc != INF:
        parts.append(f"O(y^{_exp_str(s.trunc)})")
    return (" + ".join(parts) or "0").replace("+ -", "- ")


def ord(s: PuiseuxSeries):  # noqa: A001 - mirrors the mathematical name
    return s.ord()


def conjugates(s: PuiseuxSeries, tower: FieldTower | None = None):
    """All ``N`` conjugates of ``s`` (index 0 is ``s``) and the tower holding them."""
    if tower is None:
        tower = s.tower()
    n = s.N
    tower, eps = root_of_unity(tower, n)
    return tower, [s.conjugate(eps, k) for k in range(n)]


def max_contact(members_a, members_b):
    """Largest certified ``ord(a - b)`` over the two lists of explicit series."""
    best = None
    uncertified = False
    for a in members_a:
        for b in members_b:
            diff = a - b
            if diff.terms:
                o = diff.terms[0][0]
                best = o if best is None or o > best else best
            elif diff.trunc != INF:
                uncertified = True
    if uncertified:
        # an uncertified difference could exceed every certified one
        raise TruncationTooLow("contact order not certified below the truncation")
    if best is None:
        raise SameArc("the two arcs coincide")
    return best


def contact_order(a: PuiseuxSeries, b: PuiseuxSeries) -> Fraction:
    """Contact order of two distinct arcs: max over conjugates of ``ord(a - b)``."""
    tower = a.tower().join(b.tower())
    _, conj_a = conjugates(a, tower)
    return max_contact(conj_a, [b])
