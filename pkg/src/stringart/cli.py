"""Command-line front end.

Exit codes: 0 success (or proof holds), 1 refuted or proof failed,
2 usage or domain error, 3 parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from fractions import Fraction
from typing import List, Optional, Tuple

from . import __version__
from .conic import ConicClass, classify, conic_invariants, parabola_geometry, refute_circle
from .envelope import envelope_constrained, envelope_unconstrained
from .errors import StringArtError
from .family import (
    FAMILIES,
    custom_family,
    default_params,
    equally_spaced,
    ladder_family,
    pythagorean_points,
    square4_scene,
)
from .parse import ParseError, format_poly, format_rational, parse_equation, parse_poly
from .proofs import (
    prove_calculus_identity,
    prove_discriminant,
    prove_generic_tangency,
    prove_reflection_property,
)
from .render import build_figure

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3

_RATIONAL = re.compile(r"^\s*(-?\d+)(?:/(\d+))?\s*$")


class UsageError(Exception):
    pass


class _Exit(Exception):
    def __init__(self, status, text):
        super().__init__(text)
        self.status = status
        self.text = text


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        raise _Exit(status, message or "")

    def _print_message(self, message, file=None):
        if message:
            raise _Exit(0, message)


def rational(text: str, name: str = "value") -> Fraction:
    m = _RATIONAL.match(text or "")
    if not m:
        raise UsageError(f"{name}: {text!r} is not an integer or p/q rational (decimals are rejected)")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise UsageError(f"{name}: zero denominator")
    return Fraction(num, den)


def rational_list(text: str, name: str, count: Optional[int] = None) -> Tuple[Fraction, ...]:
    parts = text.split(",")
    if count is not None and len(parts) != count:
        raise UsageError(f"{name}: expected {count} comma-separated rationals")
    return tuple(rational(p, name) for p in parts)


def param_list(text: str) -> Tuple[Fraction, ...]:
    """``a,b,c`` or ``lo..hi`` (integer steps) or ``lo..hi:step``."""
    if ".." in text:
        span, _, step = text.partition(":")
        lo_s, _, hi_s = span.partition("..")
        lo, hi = rational(lo_s, "params"), rational(hi_s, "params")
        step = rational(step, "params") if step else Fraction(1)
        if step <= 0 or hi < lo:
            raise UsageError("params: need lo <= hi and a positive step")
        count = int((hi - lo) / step) + 1
        if count > 100000:
            raise UsageError("params: too many values")
        return tuple(lo + i * step for i in range(count))
    return rational_list(text, "params")


def _rat(v) -> str:
    return format_rational(Fraction(v))


def _build_parser() -> _Parser:
    parser = _Parser(prog="stringart", description="String-art envelopes, conics and proofs.")
    parser.add_argument("--version", action="version", version=f"stringart {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        return p

    p = common(sub.add_parser("envelope", help="envelope equation of a family"))
    p.add_argument("--family", required=True, choices=["cross", "diagonal", "corner", "ladder", "square4", "custom"])
    p.add_argument("--d", default="10", help="scale d (ladder length for 'ladder')")
    p.add_argument("--param", help="parameter name of a custom family")
    p.add_argument("--family-poly", help="custom family polynomial F(x, y, param)")
    p.add_argument("--main-var", default="x", choices=["x", "y"])

    p = common(sub.add_parser("classify", help="classify a conic"))
    p.add_argument("--curve", required=True)
    p.add_argument("--geometry", action="store_true", help="also print focus, directrix and vertex of a parabola")

    p = common(sub.add_parser("prove", help="run a symbolic proof"))
    p.add_argument("--method", required=True, choices=["discriminant", "calculus", "tangency", "reflection"])
    p.add_argument("--d", default="10")
    p.add_argument("--family", default="diagonal", choices=sorted(FAMILIES))
    p.add_argument("--curve")
    p.add_argument("--focus", help="x,y")
    p.add_argument("--directrix", help="a,b,c for a*x+b*y+c=0")

    p = common(sub.add_parser("refute-circle", help="test the circle hypothesis by tangent distances"))
    p.add_argument("--family", default="corner", choices=sorted(FAMILIES))
    p.add_argument("--d", default="10")
    p.add_argument("--center", default="0,0", help="x,y")
    p.add_argument("--params", help="list a,b,c or range lo..hi[:step]")

    p = common(sub.add_parser("render", help="write an SVG figure"))
    p.add_argument("--scene", required=True, choices=["square4"] + sorted(FAMILIES))
    p.add_argument("--d", default="10")
    p.add_argument("--svg-out")
    p.add_argument("--params")
    p.add_argument("--grid", type=int, default=256)
    p.add_argument("--viewbox", help="min-x,min-y,width,height")
    p.add_argument("--size", type=int, default=600)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--string-width", type=float, default=0.15)
    p.add_argument("--curve-width", type=float, default=0.3)
    p.add_argument("--extended", action="store_true", help="draw strings as full lines")
    p.add_argument("--no-envelope", action="store_true")

    p = common(sub.add_parser("parse", help="print the canonical form of a polynomial"))
    p.add_argument("--expr", required=True)
    p.add_argument("--normalize", action="store_true")
    return parser


def _positive_d(args) -> Fraction:
    d = rational(args.d, "--d")
    if d <= 0:
        raise UsageError("--d must be positive")
    return d


def cmd_envelope(args):
    d = _positive_d(args)
    if args.family == "custom":
        if not args.family_poly or not args.param:
            raise UsageError("custom families need --family-poly and --param")
        if not re.fullmatch(r"[a-z][a-z0-9_]*", args.param) or args.param in ("x", "y"):
            raise UsageError("--param must be a variable name other than x and y")
        fams = [custom_family(parse_equation(args.family_poly), args.param)]
    elif args.family == "ladder":
        res = envelope_constrained(ladder_family(d), args.main_var, pythagorean_points(d, 8))
        return _envelope_payload([("ladder", res)])
    elif args.family == "square4":
        fams = square4_scene(d).placed()
    else:
        fams = [FAMILIES[args.family](d)]
    results = [(f.label, envelope_unconstrained(f, args.main_var)) for f in fams]
    return _envelope_payload(results)


def _envelope_payload(results):
    text = "\n".join(f"{format_poly(r.curve.poly)} = 0" for _, r in results)
    curves = [
        {"family": label, "curve": format_poly(r.curve.poly), "raw": format_poly(r.raw), "notes": list(r.notes)}
        for label, r in results
    ]
    return "ok", {"curves": curves}, text


def cmd_classify(args):
    curve = parse_equation(args.curve)
    kind = classify(curve)
    inv = conic_invariants(curve)
    result = {"class": kind.value, "delta": _rat(inv.delta), "det3": _rat(inv.det3)}
    lines = [kind.value]
    if kind is ConicClass.PARABOLA:
        g = parabola_geometry(curve)
        result["geometry"] = {
            "numeric": True,
            "focus": list(g.focus),
            "directrix": list(g.directrix),
            "vertex": list(g.vertex),
            "axis": list(g.axis),
        }
        if args.geometry:
            lines.append(f"focus: ({g.focus[0]:.10g}, {g.focus[1]:.10g})")
            n0, n1, c = g.directrix
            lines.append(f"directrix: {n0:.10g}*x {'-' if n1 < 0 else '+'} {abs(n1):.10g}*y {'-' if c < 0 else '+'} {abs(c):.10g} = 0")
            lines.append(f"vertex: ({g.vertex[0]:.10g}, {g.vertex[1]:.10g})")
    return "ok", result, "\n".join(lines)


def _approx(v: float) -> Fraction:
    # numeric geometry back to exact values; the proof then checks them exactly
    return Fraction(v).limit_denominator(10 ** 6)


def cmd_prove(args):
    d = _positive_d(args)
    fam = FAMILIES[args.family](d)
    if args.method == "discriminant":
        report = prove_discriminant(d)
    elif args.method == "calculus":
        report = prove_calculus_identity(d)
    elif args.method == "tangency":
        curve = parse_equation(args.curve) if args.curve else envelope_unconstrained(fam).curve
        report = prove_generic_tangency(curve, fam)
    else:
        if args.focus and args.directrix:
            focus = rational_list(args.focus, "--focus", 2)
            directrix = rational_list(args.directrix, "--directrix", 3)
        elif args.focus or args.directrix:
            raise UsageError("give both --focus and --directrix, or neither")
        else:
            curve = parse_equation(args.curve) if args.curve else envelope_unconstrained(fam).curve
            g = parabola_geometry(curve)
            focus = tuple(_approx(v) for v in g.focus)
            scale = max(abs(v) for v in g.directrix_normal)
            directrix = tuple(_approx(v / scale) for v in g.directrix)
        report = prove_reflection_property(fam, focus, directrix)
    status = "ok" if report.success else "proof-failed"
    head = f"{report.method.value} proof {'holds' if report.success else 'FAILED'}"
    if report.counterexample is not None:
        head += f" (nonzero at parameter {_rat(report.counterexample)})"
    return status, report.to_dict(), "\n".join([head] + [f"  {s}" for s in report.steps])


def cmd_refute(args):
    d = _positive_d(args)
    fam = FAMILIES[args.family](d)
    center = rational_list(args.center, "--center", 2)
    if args.params:
        params = param_list(args.params)
    elif args.family == "corner" and d.denominator == 1 and d <= 1000:
        params = equally_spaced(0, d, int(d) + 1)
    else:
        params = default_params(args.family, d)
    if len(params) < 2:
        raise UsageError("--params needs at least two values")
    rep = refute_circle(fam, center, params)
    prof = rep.profile
    result = {
        "circle_compatible": rep.circle_compatible,
        "insufficient_evidence": rep.insufficient_evidence,
        "min_sq": _rat(prof.min_sq),
        "max_sq": _rat(prof.max_sq),
        "ratio_sq": _rat(prof.ratio_sq) if prof.min_sq else None,
        "witness": [_rat(rep.witness[0]), _rat(rep.witness[1])],
        "entries": [[_rat(t), _rat(v)] for t, v in prof.entries],
    }
    var = fam.parameter
    if rep.circle_compatible:
        note = " (insufficient evidence: fewer than two distinct parameters)" if rep.insufficient_evidence else ""
        return "ok", result, f"circle-compatible: all sampled distances^2 equal {_rat(prof.min_sq)}{note}"
    ratio = f"ratio^2 = {_rat(prof.ratio_sq)} (ratio ~ {float(prof.ratio_sq) ** 0.5:.4f})" if prof.min_sq else "a member passes through the center"
    text = (
        f"refuted: distance^2 ranges from {_rat(prof.min_sq)} at {var}={_rat(rep.witness[0])} "
        f"to {_rat(prof.max_sq)} at {var}={_rat(rep.witness[1])}; {ratio}"
    )
    return "refuted", result, text


def cmd_render(args):
    d = _positive_d(args)
    params = param_list(args.params) if args.params else None
    options = dict(
        grid=args.grid,
        size=args.size,
        workers=args.workers,
        string_width=args.string_width,
        curve_width=args.curve_width,
        show_extended_lines=args.extended,
        show_envelope=not args.no_envelope,
    )
    if args.viewbox:
        options["viewbox"] = rational_list(args.viewbox, "--viewbox", 4)
    try:
        fig = build_figure(args.scene, d, params, **options)
    except ValueError as exc:
        if isinstance(exc, StringArtError):
            raise
        raise UsageError(str(exc)) from None
    svg = fig.svg()
    result = {"bytes": len(svg.encode()), "sha256": hashlib.sha256(svg.encode()).hexdigest()}
    if args.svg_out:
        try:
            with open(args.svg_out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(svg)
        except OSError as exc:
            raise UsageError(f"cannot write {args.svg_out}: {exc.strerror}") from None
        result["svg_out"] = args.svg_out
        return "ok", result, f"wrote {args.svg_out} ({result['bytes']} bytes)"
    result["svg"] = svg
    return "ok", result, svg.rstrip("\n")


def cmd_parse(args):
    p = parse_poly(args.expr)
    text = format_poly(p, normalized=args.normalize)
    return "ok", {"canonical": text}, text


COMMANDS = {
    "envelope": cmd_envelope,
    "classify": cmd_classify,
    "prove": cmd_prove,
    "refute-circle": cmd_refute,
    "render": cmd_render,
    "parse": cmd_parse,
}

_STATUS_EXIT = {"ok": EXIT_OK, "refuted": EXIT_NEGATIVE, "proof-failed": EXIT_NEGATIVE}


def _report(command, inputs, result, status) -> str:
    return json.dumps(
        {"command": command, "inputs": inputs, "result": result, "status": status},
        indent=2,
        sort_keys=True,
    )


def _option_names(parser) -> Tuple[set, set]:
    """All option strings, and those that take a value, across subcommands."""
    names, valued = set(), set()
    parsers = [parser]
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            parsers.extend(action.choices.values())
    for p in parsers:
        for action in p._actions:
            names.update(action.option_strings)
            if action.nargs != 0:
                valued.update(action.option_strings)
    return names, valued


def _attach_negative_values(argv: List[str], parser) -> List[str]:
    # argparse reads "--params -20..30" as two options; glue such values on with "="
    names, valued = _option_names(parser)
    out: List[str] = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in valued and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1] not in names:
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def run(argv: List[str]) -> Tuple[int, str]:
    """Execute a command line and return ``(exit code, output text)``."""
    argv = list(argv)
    want_json = "--json" in argv
    command = next((a for a in argv if a in COMMANDS), None)
    parser = _build_parser()
    argv = _attach_negative_values(argv, parser)
    try:
        args = parser.parse_args(argv)
    except _Exit as exc:
        return exc.status, exc.text.rstrip("\n")
    except UsageError as exc:
        if want_json:
            return EXIT_USAGE, _report(command, {}, {"error": "usage", "message": str(exc)}, "error")
        return EXIT_USAGE, str(exc)
    if args.command is None:
        return EXIT_USAGE, parser.format_usage().rstrip("\n")
    inputs = {k: v for k, v in vars(args).items() if k not in ("json", "command")}
    try:
        status, result, text = COMMANDS[args.command](args)
    except ParseError as exc:
        err = {"error": "parse", "kind": exc.kind.value, "position": exc.position, "message": str(exc)}
        code, status, result, text = EXIT_PARSE, "error", err, f"parse error: {exc}"
    except (UsageError, ValueError, ArithmeticError) as exc:
        # StringArtError is a ValueError; overflow comes from floats of huge rationals
        err = {"error": type(exc).__name__, "message": str(exc)}
        code, status, result, text = EXIT_USAGE, "error", err, f"error: {exc}"
    else:
        code = _STATUS_EXIT[status]
    if args.json:
        return code, _report(args.command, inputs, result, status)
    return code, text


def main(argv: Optional[List[str]] = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code in (EXIT_OK, EXIT_NEGATIVE) or "--json" in (argv or sys.argv) else sys.stderr
    if text:
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
