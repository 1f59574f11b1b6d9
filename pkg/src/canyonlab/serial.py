"""Canonical JSON encodings for exact rationals and tower coefficients."""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .arith import Coeff, FieldTower, Level, QQ


def rat_to_str(r) -> str:
    if r == math.inf:
        return "inf"
    r = Fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def rat_from_str(s: str):
    if s == "inf":
        return math.inf
    return Fraction(s)


def _value_to_json(v):
    if isinstance(v, Fraction):
        return rat_to_str(v)
    return [_value_to_json(x) for x in v]


def _value_from_json(v):
    if isinstance(v, str):
        return Fraction(v)
    return tuple(_value_from_json(x) for x in v)


def tower_to_json(tower: FieldTower) -> list:
    out = []
    for info, lv in zip(tower.describe(), tower.levels):
        info = dict(info)
        info["coefficients"] = [_value_to_json(c) for c in lv.minpoly]
        out.append(info)
    return out


_TOWER_CACHE: dict[str, FieldTower] = {}


def tower_from_json(data: list) -> FieldTower:
    """Rebuild a tower; equal encodings share level objects so they stay compatible."""
    tower = QQ
    for i in range(len(data)):
        key = json.dumps(data[: i + 1], sort_keys=True)
        if key not in _TOWER_CACHE:
            info = data[i]
            level = Level(info["name"], tuple(_value_from_json(c) for c in info["coefficients"]),
                          info["verified"])
            _TOWER_CACHE[key] = FieldTower(tower.levels + (level,))
        tower = _TOWER_CACHE[key]
    return tower


def coeff_to_json(c: Coeff) -> dict:
    return {
        "polynomial": str(c),
        "rational": rat_to_str(c.to_rational()) if c.is_rational() else None,
        "tower": tower_to_json(c.tower),
        "value": _value_to_json(c.value),
    }


def coeff_from_json(data: dict) -> Coeff:
    tower = tower_from_json(data["tower"])
    return Coeff(tower, _value_from_json(data["value"]))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
