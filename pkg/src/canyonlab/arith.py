"""Exact coefficient arithmetic.

Rationals are :class:`fractions.Fraction`.  Algebraic coefficients live in a
:class:`FieldTower`: a chain of simple extensions of the rationals, each given
by a monic minimal polynomial over the level below.  An element of a tower of
depth ``k`` is stored as a tuple of ``deg_k`` elements of depth ``k - 1``
(the coefficients of ``1, g, g^2, ...`` for the top generator ``g``), fully
reduced, so equality is structural and zero testing is exact.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import DivisionByZero, IncompatibleTowers, ReducibleMinPoly

Rat = Fraction

__all__ = [
    "Rat",
    "Level",
    "FieldTower",
    "QQ",
    "Coeff",
    "as_coeff",
    "adjoin_root",
    "root_of_unity",
]


class Level:
    """One adjoined generator with its monic minimal polynomial.

    ``minpoly`` holds raw values of the tower below, lowest degree first,
    including the leading ``1``.
    """

    __slots__ = ("name", "minpoly", "degree", "verified")

    def __init__(self, name: str, minpoly: tuple, verified: bool):
        self.name = name
        self.minpoly = minpoly
        self.degree = len(minpoly) - 1
        self.verified = verified

    def __repr__(self):
        return f"Level({self.name!r}, degree={self.degree})"


# ---------------------------------------------------------------------------
# raw arithmetic on nested tuples; ``k`` is the depth of the operands

def _zero(levels, k):
    if k == 0:
        return Fraction(0)
    return (_zero(levels, k - 1),) * levels[k - 1].degree


def _from_rat(levels, k, r):
    if k == 0:
        return Fraction(r)
    lv = levels[k - 1]
    return (_from_rat(levels, k - 1, r),) + (_zero(levels, k - 1),) * (lv.degree - 1)


def _is_zero(k, a):
    if k == 0:
        return a == 0
    return all(_is_zero(k - 1, x) for x in a)


def _add(k, a, b):
    if k == 0:
        return a + b
    return tuple(_add(k - 1, x, y) for x, y in zip(a, b))


def _sub(k, a, b):
    if k == 0:
        return a - b
    return tuple(_sub(k - 1, x, y) for x, y in zip(a, b))


def _neg(k, a):
    if k == 0:
        return -a
    return tuple(_neg(k - 1, x) for x in a)


def _mul(levels, k, a, b):
    if k == 0:
        return a * b
    lv = levels[k - 1]
    d = lv.degree
    j = k - 1
    zero = _zero(levels, j)
    prod = [zero] * (2 * d - 1)
    nz_b = [(i, y) for i, y in enumerate(b) if not _is_zero(j, y)]
    if not nz_b:
        return a if _is_zero(k, a) else b
    for i, x in enumerate(a):
        if _is_zero(j, x):
            continue
        for i2, y in nz_b:
            prod[i + i2] = _add(j, prod[i + i2], _mul(levels, j, x, y))
    mp = lv.minpoly
    for i in range(2 * d - 2, d - 1, -1):
        c = prod[i]
        if _is_zero(j, c):
            continue
        for t in range(d):
            if not _is_zero(j, mp[t]):
                prod[i - d + t] = _sub(j, prod[i - d + t], _mul(levels, j, c, mp[t]))
    return tuple(prod[:d])


def _times_generator(levels, k, a):
    """Multiply a depth-``k`` value by the top generator."""
    lv = levels[k - 1]
    j = k - 1
    top = a[-1]
    out = [_zero(levels, j)] + list(a[:-1])
    if not _is_zero(j, top):
        for t in range(lv.degree):
            out[t] = _sub(j, out[t], _mul(levels, j, top, lv.minpoly[t]))
    return tuple(out)


def _mult_matrix(levels, k, a):
    """Rows-by-columns matrix of multiplication by ``a`` over depth ``k-1``."""
    d = levels[k - 1].degree
    cols = [a]
    for _ in range(d - 1):
        cols.append(_times_generator(levels, k, cols[-1]))
    return [[cols[c][r] for c in range(d)] for r in range(d)]


def _inv(levels, k, a):
    if _is_zero(k, a):
        raise DivisionByZero("division by zero in coefficient field")
    if k == 0:
        return 1 / a
    j = k - 1
    d = levels[j].degree
    m = _mult_matrix(levels, k, a)
    rhs = [_from_rat(levels, j, 1)] + [_zero(levels, j)] * (d - 1)
    for r in range(d):
        m[r].append(rhs[r])
    # Gauss-Jordan over the field below
    for col in range(d):
        piv = next(r for r in range(col, d) if not _is_zero(j, m[r][col]))
        m[col], m[piv] = m[piv], m[col]
        inv_p = _inv(levels, j, m[col][col])
        m[col] = [_mul(levels, j, x, inv_p) for x in m[col]]
        for r in range(d):
            if r != col and not _is_zero(j, m[r][col]):
                f = m[r][col]
                m[r] = [_sub(j, x, _mul(levels, j, f, y)) for x, y in zip(m[r], m[col])]
    return tuple(m[r][d] for r in range(d))


def _det(levels, k, rows):
    """Determinant of a square matrix of depth-``k`` values."""
    m = [list(r) for r in rows]
    n = len(m)
    det = _from_rat(levels, k, 1)
    for col in range(n):
        piv = next((r for r in range(col, n) if not _is_zero(k, m[r][col])), None)
        if piv is None:
            return _zero(levels, k)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = _neg(k, det)
        p = m[col][col]
        det = _mul(levels, k, det, p)
        inv_p = _inv(levels, k, p)
        for r in range(col + 1, n):
            if _is_zero(k, m[r][col]):
                continue
            f = _mul(levels, k, m[r][col], inv_p)
            m[r] = [_sub(k, x, _mul(levels, k, f, y)) for x, y in zip(m[r], m[col])]
    return det


def _lift(levels, src, dst, v):
    for i in range(src, dst):
        v = (v,) + (_zero(levels, i),) * (levels[i].degree - 1)
    return v


def _descend(k, v):
    while k > 0 and all(_is_zero(k - 1, x) for x in v[1:]):
        v = v[0]
        k -= 1
    return k, v


class FieldTower:
    """Immutable chain of simple algebraic extensions of the rationals."""

    __slots__ = ("levels",)

    def __init__(self, levels=()):
        self.levels = tuple(levels)

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def degree(self) -> int:
        out = 1
        for lv in self.levels:
            out *= lv.degree
        return out

    @property
    def base(self) -> "FieldTower":
        return FieldTower(self.levels[:-1])

    @property
    def verified(self) -> bool:
        return all(lv.verified for lv in self.levels)

    def generator(self) -> "Coeff":
        if not self.levels:
            raise ValueError("the rationals have no generator")
        k = self.depth
        one = _from_rat(self.levels, k - 1, 1)
        zero = _zero(self.levels, k - 1)
        return Coeff(self, (zero, one) + (zero,) * (self.levels[-1].degree - 2))

    def is_prefix_of(self, other: "FieldTower") -> bool:
        if len(self.levels) > len(other.levels):
            return False
        return all(a is b for a, b in zip(self.levels, other.levels))

    def same_as(self, other: "FieldTower") -> bool:
        return len(self.levels) == len(other.levels) and self.is_prefix_of(other)

    def join(self, other: "FieldTower") -> "FieldTower":
        if self.is_prefix_of(other):
            return other
        if other.is_prefix_of(self):
            return self
        raise IncompatibleTowers("neither coefficient tower embeds in the other")

    def zero(self) -> "Coeff":
        return Coeff(self, _zero(self.levels, self.depth))

    def one(self) -> "Coeff":
        return Coeff(self, _from_rat(self.levels, self.depth, 1))

    def __call__(self, r) -> "Coeff":
        return Coeff(self, _from_rat(self.levels, self.depth, r))

    def describe(self) -> list:
        """Generator names and minimal polynomials, bottom level first."""
        out = []
        for i, lv in enumerate(self.levels):
            below = FieldTower(self.levels[:i])
            coeffs = [Coeff(below, c) for c in lv.minpoly]
            out.append({"name": lv.name, "minpoly": _render_upoly(coeffs, "Z"),
                        "degree": lv.degree, "verified": lv.verified})
        return out

    def __repr__(self):
        names = ", ".join(lv.name for lv in self.levels)
        return f"FieldTower(QQ{'; ' + names if names else ''})"


QQ = FieldTower()


class Coeff:
    """An exact element of a :class:`FieldTower`."""

    __slots__ = ("tower", "value")

    def __init__(self, tower: FieldTower, value):
        self.tower = tower
        self.value = value

    @classmethod
    def rational(cls, r, tower: FieldTower = QQ) -> "Coeff":
        return tower(r)

    # -- coercion ---------------------------------------------------------
    def lift(self, tower: FieldTower) -> "Coeff":
        if self.tower is tower or self.tower.same_as(tower):
            return self if self.tower is tower else Coeff(tower, self.value)
        if not self.tower.is_prefix_of(tower):
            raise IncompatibleTowers("cannot lift into a tower that does not extend this one")
        return Coeff(tower, _lift(tower.levels, self.tower.depth, tower.depth, self.value))

    def _pair(self, other):
        if isinstance(other, Coeff):
            if other.tower is self.tower:
                return self.tower, self.value, other.value
            t = self.tower.join(other.tower)
            return t, self.lift(t).value, other.lift(t).value
        if isinstance(other, (int, Rational)):
            t = self.tower
            return t, self.value, _from_rat(t.levels, t.depth, other)
        return None

    # -- field operations -------------------------------------------------
    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, a, b = p
        return Coeff(t, _add(t.depth, a, b))

    __radd__ = __add__

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, a, b = p
        return Coeff(t, _sub(t.depth, a, b))

    def __rsub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, a, b = p
        return Coeff(t, _sub(t.depth, b, a))

    def __mul__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, a, b = p
        return Coeff(t, _mul(t.levels, t.depth, a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, a, b = p
        return Coeff(t, _mul(t.levels, t.depth, a, _inv(t.levels, t.depth, b)))

    def __rtruediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, a, b = p
        return Coeff(t, _mul(t.levels, t.depth, b, _inv(t.levels, t.depth, a)))

    def __neg__(self):
        return Coeff(self.tower, _neg(self.tower.depth, self.value))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = self.tower.one()
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "Coeff":
        t = self.tower
        return Coeff(t, _inv(t.levels, t.depth, self.value))

    def is_zero(self) -> bool:
        return _is_zero(self.tower.depth, self.value)

    def __bool__(self):
        return not self.is_zero()

    def equals(self, other) -> bool:
        p = self._pair(other)
        if p is None:
            return False
        t, a, b = p
        return _is_zero(t.depth, _sub(t.depth, a, b))

    def __eq__(self, other):
        if not isinstance(other, (Coeff, int, Rational)):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        return hash(_descend(self.tower.depth, self.value))

    def is_rational(self) -> bool:
        return _descend(self.tower.depth, self.value)[0] == 0

    def to_rational(self) -> Fraction:
        k, v = _descend(self.tower.depth, self.value)
        if k != 0:
            raise ValueError(f"{self} is not rational")
        return v

    def norm_down(self) -> "Coeff":
        """Norm from the top level of the tower to the level below."""
        t = self.tower
        if t.depth == 0:
            return self
        m = _mult_matrix(t.levels, t.depth, self.value)
        return Coeff(t.base, _det(t.levels, t.depth - 1, m))

    def __str__(self):
        return _render(self.tower.levels, self.tower.depth, self.value)

    def __repr__(self):
        return f"Coeff({self})"


def as_coeff(x, tower: FieldTower = QQ) -> Coeff:
    if isinstance(x, Coeff):
        return x
    return tower(x)


# ---------------------------------------------------------------------------
# rendering

def _rat_str(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def _render(levels, k, v) -> str:
    k, v = _descend(k, v)
    if k == 0:
        return _rat_str(v)
    name = levels[k - 1].name
    parts = []
    for i in range(len(v) - 1, -1, -1):
        c = v[i]
        if _is_zero(k - 1, c):
            continue
        cs = _render(levels, k - 1, c)
        mon = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
        if not mon:
            parts.append(cs)
        elif cs == "1":
            parts.append(mon)
        elif cs == "-1":
            parts.append("-" + mon)
        elif _descend(k - 1, c)[0] == 0:
            parts.append(f"{cs}*{mon}")
        else:
            parts.append(f"({cs})*{mon}")
    out = " + ".join(parts)
    return out.replace("+ -", "- ")


def _render_upoly(coeffs, var: str) -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c.is_zero():
            continue
        cs = str(c)
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mon:
            parts.append(cs)
        elif cs == "1":
            parts.append(mon)
        elif cs == "-1":
            parts.append("-" + mon)
        elif c.is_rational():
            parts.append(f"{cs}*{mon}")
        else:
            parts.append(f"({cs})*{mon}")
    return (" + ".join(parts) or "0").replace("+ -", "- ")


# ---------------------------------------------------------------------------
# extensions

def adjoin_root(tower: FieldTower, minpoly, name: str | None = None, check: bool = True):
    """Adjoin a root of ``minpoly`` (coefficients lowest degree first).

    Returns the extended tower and the new generator.  With ``check`` the
    polynomial is factored over ``tower`` first and :class:`ReducibleMinPoly`
    is raised if it splits.
    """
    coeffs = [as_coeff(c, tower).lift(tower) for c in minpoly]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if len(coeffs) < 2:
        raise ValueError("minimal polynomial must be nonconstant")
    lead = coeffs[-1]
    coeffs = [c / lead for c in coeffs]
    if len(coeffs) == 2:
        raise ReducibleMinPoly(f"linear polynomial has the root {-coeffs[0]} in the tower")
    if check:
        from .upoly import factor

        _, facs = factor(coeffs)
        if len(facs) != 1 or facs[0][1] != 1:
            raise ReducibleMinPoly(f"{_render_upoly(coeffs, 'Z')} splits over {tower!r}")
    if name is None:
        name = f"g{tower.depth + 1}"
    level = Level(name, tuple(c.value for c in coeffs), verified=True)
    new = FieldTower(tower.levels + (level,))
    return new, new.generator()


def root_of_unity(tower: FieldTower, M: int, max_degree: int | None = None):
    """A primitive ``M``-th root of unity, adjoining one if the tower lacks it."""
    if M < 1:
        raise ValueError("order must be positive")
    if M == 1:
        return tower, tower.one()
    if M == 2:
        return tower, -tower.one()
    from .upoly import cyclotomic, split_one_root

    return split_one_root(cyclotomic(M, tower), tower, name=f"e{M}", max_degree=max_degree)
