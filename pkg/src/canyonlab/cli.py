"""Command-line front end.

Exit codes: 0 success (``compare``: Inconclusive), 1 ``compare``: Distinguished,
2 input error, 3 truncation cap reached, 4 any other pipeline failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from .errors import CanyonError, ParseError, TruncationTooLow, ZeroPolynomial
from .invariants import IdentityCard, compare_cards, identity_card
from .poly import parse, parse_rational
from .polygon import render_svg

EXIT_OK = 0
EXIT_DISTINGUISHED = 1
EXIT_INPUT = 2
EXIT_TRUNCATION = 3
EXIT_FAILURE = 4


class InputError(Exception):
    stage = "input"


def _bindings(items) -> dict:
    out: dict[str, Fraction] = {}
    for item in items or []:
        if "=" not in item:
            raise InputError(f"parameter binding {item!r} is not NAME=p/q")
        name, value = item.split("=", 1)
        name = name.strip()
        if not name.isidentifier() or name in ("x", "y"):
            raise InputError(f"invalid parameter name {name!r}")
        if name in out:
            raise InputError(f"parameter {name!r} bound more than once")
        try:
            out[name] = parse_rational(value)
        except ParseError as exc:
            raise InputError(str(exc)) from exc
    return out


def _trunc(text):
    if text is None:
        return None
    t = parse_rational(text)
    if t < 1:
        raise InputError("--trunc must be at least 1")
    return t


def _germ(text: str, params: dict):
    f = parse(text, params)
    if f.is_zero():
        raise ZeroPolynomial("the germ is identically zero")
    if (0, 0) in f.terms:
        raise InputError("the germ must vanish at the origin")
    if f.x_degree() < 1:
        raise InputError("the germ does not depend on x")
    return f


def _card(text: str, params: dict, args) -> IdentityCard:
    if text.endswith(".json") and os.path.exists(text):
        return IdentityCard.from_json(Path(text).read_text(encoding="utf-8"))
    f = _germ(text, params)
    card = identity_card(f, text, params, trunc=_trunc(args.trunc), cap=args.cap)
    if args.verbose:
        for note in card.data.get("notes", []):
            print(f"canyonlab: note: {note}", file=sys.stderr)
    return card


def _terms(series: str) -> list:
    """Split a printed series at top-level `` + `` and `` - `` signs."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(series):
        depth += (ch == "(") - (ch == ")")
        if depth == 0 and series[i:i + 3] in (" + ", " - "):
            out.append(series[start:i])
            start = i + 1
    out.append(series[start:])
    return out


def _short(series: str, keep: int = 3) -> str:
    terms = _terms(series)
    tail = terms[-1] if terms[-1].lstrip("+- ").startswith("O(") else None
    body = terms[:-1] if tail else terms
    if len(body) <= keep:
        return series
    return " ".join(body[:keep] + ["+ ..."] + ([tail] if tail else []))


def _text_summary(card: IdentityCard) -> str:
    d = card.data
    lines = [f"germ: {d['germ']['polynomial']}", f"truncation: {d['truncation']}"]
    if d["germ"]["shear"]:
        lines.append(f"shear: y -> y + {d['germ']['shear']}*x")
    for c in d["canyons"]:
        flag = " (degree one)" if c["degree_one"] else ""
        lines.append(
            f"canyon {c['index']}{flag}: d={c['degree']} h={c['h']} a={c['a']['polynomial']} "
            f"delta_top={c['delta_top']} mu={c['mu']} "
            f"polygon=Conv{{{','.join(c['augmented_polygon']['vertices'])}}}")
        for m in c["members"]:
            lines.append(f"    polar {_short(m['series'])}  (size {m['size']}, multiplicity {m['multiplicity']})")
    for r in d["contacts"]:
        lines.append(f"contact {r['pair'][0]}-{r['pair'][1]}: {r['contact']}")
    for r in d["second_level"]:
        if r["H"] is None:
            lines.append(f"second level {r['pair']}: delta={r['delta']} H>={r['H_lower_bound']} (not applicable)")
        else:
            lines.append(f"second level {r['pair']}: delta={r['delta']} H={r['H']} "
                         f"Delta={r['Delta']['polynomial']}")
    for r in d["omega"]:
        lines.append(f"omega canyon {r['canyon']} edge {r['delta']}: omega={r['omega']} "
                     f"H_min={r['H_min']} pass={r['pass']}")
    for lv in d["tower"]:
        lines.append(f"extension {lv['name']}: {lv['minpoly']} = 0")
    return "\n".join(lines) + "\n"


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _svgs(card: IdentityCard, out: str | None):
    if card.analysis is None:
        raise InputError("SVG output needs a germ, not a stored card")
    cans = card.analysis.canyons
    pics = [render_svg(C.aug, title=f"canyon {i}: {C.aug}") for i, C in enumerate(cans)]
    if out is None:
        if len(pics) != 1:
            raise InputError("several canyons: pass --out DIR to write one SVG per canyon")
        sys.stdout.write(pics[0])
        return
    path = Path(out)
    if len(pics) == 1 and path.suffix == ".svg":
        path.write_text(pics[0], encoding="utf-8")
        return
    path.mkdir(parents=True, exist_ok=True)
    for i, pic in enumerate(pics):
        (path / f"canyon-{i}.svg").write_text(pic, encoding="utf-8")


def cmd_analyze(args) -> int:
    card = _card(args.germ, _bindings(args.param), args)
    if args.emit == "json":
        _write(card.to_json(), args.out)
    elif args.emit == "text":
        _write(_text_summary(card), args.out)
    else:
        _svgs(card, args.out)
    return EXIT_OK


def cmd_plot(args) -> int:
    card = _card(args.germ, _bindings(args.param), args)
    _svgs(card, args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    shared = _bindings(args.param)
    pa, pb = dict(shared), dict(shared)
    pa.update(_bindings(args.param_a))
    pb.update(_bindings(args.param_b))
    ca = _card(args.germ_a, pa, args)
    cb = _card(args.germ_b, pb, args)
    verdict = compare_cards(ca, cb)
    _write(str(verdict) + "\n", args.out)
    return EXIT_DISTINGUISHED if verdict.distinguished else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="canyonlab",
                                description="Bi-Lipschitz invariants of plane curve germs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--param", action="append", metavar="NAME=p/q",
                        help="bind a parameter to an exact rational (repeatable)")
    common.add_argument("--trunc", metavar="p/q", help="fixed truncation order (no doubling)")
    common.add_argument("--cap", type=int, default=None,
                        help="truncation doubling rounds (default: $CANYONLAB_CAP or 8)")
    common.add_argument("--out", metavar="PATH", help="output file (or directory for SVGs)")
    common.add_argument("-v", "--verbose", action="store_true",
                        help="print pipeline notes to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="emit the identity card of a germ")
    a.add_argument("germ")
    a.add_argument("--emit", choices=("json", "svg", "text"), default="json")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("compare", parents=[common], help="compare two germs (or stored cards)")
    c.add_argument("germ_a")
    c.add_argument("germ_b")
    c.add_argument("--param-a", action="append", metavar="NAME=p/q")
    c.add_argument("--param-b", action="append", metavar="NAME=p/q")
    c.set_defaults(func=cmd_compare)

    g = sub.add_parser("plot", parents=[common], help="SVG of each augmented Newton polygon")
    g.add_argument("germ")
    g.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cap is not None and args.cap < 0:
        print("canyonlab: error [stage=input]: --cap must be non-negative", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, ParseError, ZeroPolynomial, ValueError) as exc:
        stage = getattr(exc, "stage", "input")
        print(f"canyonlab: error [stage={stage}]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TruncationTooLow as exc:
        print(f"canyonlab: error [stage={exc.stage}]: truncation cap reached: {exc}",
              file=sys.stderr)
        return EXIT_TRUNCATION
    except CanyonError as exc:
        print(f"canyonlab: error [stage={exc.stage}]: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
