"""Kuo-Lu contact tree of the roots of ``f`` and the topological part of ``NP(f, gamma)``."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import SameArc, TruncationTooLow
from .serial import rat_to_str
from .series import INF, PuiseuxSeries


def root_contact(a: PuiseuxSeries, b: PuiseuxSeries):
    """Certified ``ord(a - b)`` for two individual roots."""
    diff = a - b
    if diff.terms:
        return diff.terms[0][0]
    if diff.trunc == INF:
        raise SameArc("the two roots coincide")
    raise TruncationTooLow(f"roots agree below y^{diff.trunc}")


def contact_lower_bound(a: PuiseuxSeries, b: PuiseuxSeries):
    """``ord(a - b)`` if certified, else the truncation it is known to exceed."""
    diff = a - b
    return diff.terms[0][0] if diff.terms else diff.trunc


@dataclass(frozen=True)
class Bar:
    height: Fraction
    children: tuple  # Bar or int (leaf index)

    def leaves(self):
        out = []
        for c in self.children:
            out.extend(c.leaves() if isinstance(c, Bar) else [c])
        return out

    def bars(self):
        yield self
        for c in self.children:
            if isinstance(c, Bar):
                yield from c.bars()

    def to_json(self):
        return {"children": [c.to_json() if isinstance(c, Bar) else {"leaf": c} for c in self.children],
                "height": rat_to_str(self.height)}


@dataclass(frozen=True)
class KuoLuTree:
    leaves: tuple  # root series, one per root counted without multiplicity
    multiplicities: tuple
    root: Bar | None

    def bars(self):
        return list(self.root.bars()) if self.root else []

    def heights(self):
        return sorted(b.height for b in self.bars())

    def to_json(self):
        return {"bars": self.root.to_json() if self.root else None,
                "leaves": len(self.leaves),
                "multiplicities": list(self.multiplicities)}


def _build(indices, contact):
    if len(indices) == 1:
        return indices[0]
    h = min(contact[i][j] for i in indices for j in indices if i < j)
    groups: list[list[int]] = []
    for i in indices:
        for g in groups:
            if contact[g[0]][i] > h:
                g.append(i)
                break
        else:
            groups.append([i])
    children = tuple(_build(g, contact) for g in groups)
    return Bar(h, children)


def build_tree(roots) -> KuoLuTree:
    """Tree over ``[(series, multiplicity), ...]`` or a root bundle; bars sit at pairwise contact heights."""
    if hasattr(roots, "all_members"):
        roots = roots.all_members()
    series = [s for s, _ in roots]
    mults = tuple(m for _, m in roots)
    n = len(series)
    contact = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            contact[i][j] = contact[j][i] = root_contact(series[i], series[j])
    root = _build(list(range(n)), contact) if n >= 2 else None
    return KuoLuTree(tuple(series), mults, root)


def is_ultrametric(contacts) -> bool:
    """The two smallest of any three pairwise contacts are equal."""
    n = len(contacts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = sorted((contacts[i][j], contacts[i][k], contacts[j][k]))
                if a != b:
                    return False
    return True


def topological_part(roots, gamma: PuiseuxSeries, delta_top):
    """Contacts ``c_i < delta_top`` of ``gamma`` with the roots of ``f`` and the edges they predict.

    Returns ``(sorted multiset, [(co-slope, length), ...])`` with the edge list in
    order of decreasing co-slope, as edges appear left to right.
    """
    cs = []
    for s, mult in roots:
        c = contact_lower_bound(gamma, s)
        if c >= delta_top:
            continue
        if not (gamma - s).terms:
            raise TruncationTooLow("contact below the top edge is not certified")
        cs.extend([c] * mult)
    counts = Counter(cs)
    edges = sorted(counts.items(), key=lambda kv: -kv[0])
    return sorted(cs), edges
