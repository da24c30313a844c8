"""Command-line front end.

    bwalls <command> [--surface file.json | --preset name] [--D coords] [flags]

Exit codes: 0 success (for ``check``: hypotheses verified), 2 hypotheses
fail or sit on a boundary, 1 input error.
"""
from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path

from .bmclass import (
    blowup_class_on_wall,
    blowup_gammas,
    chord_midpoint,
    gamma_hilb_closed,
    hilb_class_on_wall,
)
from .destab import first_wall_search
from .errors import BwallsError, InputError
from .exactnum import parse_rational
from .lattice import DivisorClass, SurfaceData, enumerate_classes
from .plot import figure_items, parse_item, render_svg
from .presets import load_surface, preset
from .reider import run_check
from .report import dumps, make_document

EXIT_OK, EXIT_INPUT, EXIT_FAIL = 0, 1, 2


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"expected a rational number, got {text!r}") from None


def _surface(args: argparse.Namespace) -> SurfaceData:
    pol = _int_list(args.D) if args.D else None
    if args.surface and args.preset:
        raise InputError("give either --surface or --preset, not both")
    if args.surface:
        return load_surface(args.surface, pol)
    if args.preset:
        return preset(args.preset, pol)
    raise InputError("a surface is required (--surface file.json or --preset name)")


def _class(text: str, surface: SurfaceData) -> DivisorClass:
    c = DivisorClass(tuple(_int_list(text)))
    if len(c) != surface.lattice.rank:
        raise InputError(f"class {text} does not match the Picard rank {surface.lattice.rank}")
    return c


# -- commands -------------------------------------------------------------------------

def cmd_check(args, surface: SurfaceData) -> tuple[str, int]:
    try:
        verdict = run_check(surface, args.theorem)
    except ValueError as exc:
        if isinstance(exc, BwallsError):
            raise
        raise InputError(str(exc)) from exc
    doc = make_document({"name": "check", "theorem": args.theorem}, surface, {"verdict": verdict})
    return dumps(doc), EXIT_OK if verdict.verified else EXIT_FAIL


def cmd_walls(args, surface: SurfaceData) -> tuple[str, int]:
    if args.n < 1:
        raise InputError("n must be a positive integer")
    rep = first_wall_search(args.n, surface)
    walls = [
        {
            "anchor": w.anchor,
            "slope_D": w.slope,
            "slope_sq_y": w.slope_sq_y(surface),
            "witness_class": C,
            "witness_self_int": surface.self_int(C),
            "witness_degree": surface.degree(C),
        }
        for w, C in rep.rank_one_walls
    ]
    body = {
        "n": rep.n,
        "verdict": rep.verdict,
        "tangent": {"base": rep.tangent.base, "tangency_x": rep.tangent.tangency_x,
                    "slope_sq_D": rep.tangent.slope_sq_D,
                    "slope_sq_y": rep.tangent.slope_sq_D / surface.delta},
        "higher_rank_floor_sq_y": rep.higher_rank_floor_sq,
        "upper_bound_sq_y": rep.upper_bound_sq,
        "degree_cap": rep.cd_cap,
        "candidates_searched": len(rep.candidates),
        "rank_one_walls": walls,
    }
    return dumps(make_document({"name": "walls", "n": args.n}, surface, body)), EXIT_OK


def cmd_gamma(args, surface: SurfaceData) -> tuple[str, int]:
    space = args.space
    if space == "blowup":
        if args.a is None:
            raise InputError("blowup needs --a")
        a = _rational(args.a)
        if a >= 0:
            raise InputError("W(a) needs a < 0")
        g_line, g_exc = blowup_gammas(a, surface)
        cls = blowup_class_on_wall(a, surface)
        body = {
            "wall": {"anchor": a, "slope_D": 2},
            "evaluated_at": chord_midpoint(a, surface),
            "gamma": [g_line, g_exc],
            "ratio": g_line.value_scaled / g_exc.value_scaled if g_exc.value_scaled else None,
            "class": cls,
            "class_text": str(cls),
        }
        command = {"name": "gamma", "space": space, "a": a}
    elif space.startswith("hilb:"):
        try:
            n = int(space.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad space {space!r}") from None
        if n < 1:
            raise InputError("hilb:n needs n >= 1")
        if args.s is None:
            raise InputError("hilb:n needs --s")
        s = _rational(args.s)
        if s <= 0:
            raise InputError("slope must be positive")
        x = _rational(args.x) if args.x is not None else Fraction(0)
        if x <= -n:
            raise InputError("evaluation abscissa must exceed -n")
        curve = _class(args.curve, surface) if args.curve else surface.polarization
        plain = gamma_hilb_closed(curve, n, s, x, surface)
        through = gamma_hilb_closed(curve, n, s, x, surface, through_point=True)
        hc = hilb_class_on_wall(s, surface)
        body = {
            "wall": {"anchor": -n, "slope_D": s},
            "curve": curve,
            "gamma": [plain, through],
            "class": {
                "k_coeff": hc.k_coeff,
                "d_coeff": hc.d_coeff.p,
                "e_coeff": hc.e_coeff,
                "symmetrized_coords": hc.symm_coords,
            },
        }
        command = {"name": "gamma", "space": space, "s": s, "x": x}
    else:
        raise InputError("space must be 'blowup' or 'hilb:n'")
    return dumps(make_document(command, surface, body)), EXIT_OK


def cmd_plot(args, surface: SurfaceData) -> tuple[str, int]:
    items = figure_items(args.figure, surface) if args.figure else []
    items += [parse_item(t, surface) for t in args.items]
    return render_svg(surface, items, title=surface.name), EXIT_OK


def cmd_enumerate(args, surface: SurfaceData) -> tuple[str, int]:
    classes = enumerate_classes(surface, args.deg_min, args.deg_max, args.self_min, args.self_max)
    body = {
        "classes": [
            {"class": C, "degree": surface.degree(C), "self_int": surface.self_int(C)} for C in classes
        ],
        "count": len(classes),
    }
    command = {"name": "enumerate", "deg_min": args.deg_min, "deg_max": args.deg_max,
               "self_min": args.self_min, "self_max": args.self_max}
    return dumps(make_document(command, surface, body)), EXIT_OK


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", help="SurfaceSpec JSON file")
    common.add_argument("--preset", help="P2, P1xP1, BlowupP2_<k> or CoverP2_<d>")
    common.add_argument("--D", help="polarization coordinates, e.g. --D=5 or --D=7,-2,-3,-1")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="bwalls", description="Exact wall and positivity computations on surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check the hypotheses of a positivity theorem")
    p.add_argument("theorem", help="reider:k, cor53:n, cor54:a|b, prop61:a|b, thm71 or thm72:n")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("walls", parents=[common], help="first-wall search for ideals of n points")
    p.add_argument("-n", type=int, default=1)
    p.set_defaults(func=cmd_walls)

    p = sub.add_parser("gamma", parents=[common], help="determinant class along a wall")
    p.add_argument("--space", default="blowup", help="blowup or hilb:n")
    p.add_argument("--a", help="x-intercept of the slope-2 wall (blowup)")
    p.add_argument("--s", help="D-scaled wall slope (hilb:n)")
    p.add_argument("--x", help="evaluation abscissa on the wall (hilb:n, default 0)")
    p.add_argument("--curve", help="curve class for the Hilbert family (default D)")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("plot", parents=[common], help="SVG wall diagram")
    p.add_argument("items", nargs="*", help="wall:A:S point:X:Y[:label] ch:R:C1:CH2[:label] tangent:N region:N")
    p.add_argument("--figure", type=int, choices=(1, 2))
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("enumerate", parents=[common], help="list classes in a degree/self-intersection box")
    p.add_argument("--deg-min", type=int, default=1)
    p.add_argument("--deg-max", type=int, required=True)
    p.add_argument("--self-min", type=int, required=True)
    p.add_argument("--self-max", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)
    return parser


_VALUE_FLAGS = ("--D", "--a", "--s", "--x", "--curve")
_NEGATIVE = re.compile(r"^-\d")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--a -3/2`` into ``--a=-3/2`` so argparse does not read the value as a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        surface = _surface(args)
        text, code = args.func(args, surface)
    except BwallsError as exc:
        print(f"bwalls: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
