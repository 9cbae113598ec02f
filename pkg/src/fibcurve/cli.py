"""Command-line interface: ``fibcurve <command> ...``."""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import curve, export
from .checks import run_checks
from .goldenfield import fibonacci
from .prototiles import ALL_LABELS, Label
from .solver import (
    diagnose_printed_rows,
    omega_as_types,
    problem_from_rule,
    solve_decorations,
    system_orbits,
    uniqueness_search,
)
from .substitution import (
    PHI_SQUARED,
    count_matrix,
    dominant_eigenvalue,
    printed_rule,
    rule_omega,
    supertile,
)

SAFE_LEVEL = 20


class UsageError(Exception):
    pass


def _warn_level(k: int) -> None:
    if k > SAFE_LEVEL:
        print(
            f"warning: level {k} has {fibonacci(k + 2) ** 2} tiles; this may take a long time",
            file=sys.stderr,
        )


def _style() -> export.Style:
    try:
        return export.Style(palette=export.palette_from_env())
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _label(text: str) -> Label:
    try:
        return Label.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _fraction(text: str) -> Fraction:
    try:
        x = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected P/Q, got {text!r}") from exc
    if "." in text or "e" in text.lower():
        raise argparse.ArgumentTypeError("parameters are exact; write them as P/Q")
    if not 0 <= x <= 1:
        raise argparse.ArgumentTypeError(f"{text} is outside [0, 1]")
    return x


def _point(text: str) -> tuple[float, float]:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}") from exc
    return x, y


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


# ---------------------------------------------------------------------------


def cmd_supertile(args) -> int:
    _warn_level(args.k)
    patch = supertile(args.seed, args.k)
    if args.format == "json":
        _emit(export.to_json(patch), args.output)
    elif args.format == "svg":
        line = export.centres(patch) if args.curve else None
        _emit(export.to_svg(patch, line, _style()), args.output)
    else:
        _emit(export.to_csv(export.centres(patch)), args.output)
    return 0


def cmd_curve_eval(args) -> int:
    res = curve.evaluate(args.x, args.depth, tie=args.tie)
    cx, cy = res.center_float()
    lo, hi = res.interval
    print(f"x = {args.x}")
    print(f"depth = {args.depth}")
    print(f"center = ({cx:.15g}, {cy:.15g})")
    print(f"center_exact = ({res.center.x}, {res.center.y})")
    print(f"interval = [{lo}, {hi}]")
    print(f"label = {res.labels[-1]}")
    print(f"index = {res.chain[-1][1]}")
    print(f"error_bound = {res.error_bound:.6e}")
    if args.chain:
        for (level, idx), lab in zip(res.chain, res.labels):
            print(f"  level {level}: J_{idx} ({lab})")
    return 0


def cmd_curve_preimage(args) -> int:
    try:
        res = curve.preimage(args.y, args.depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lo, hi = res.interval
    print(f"y = ({args.y[0]!r}, {args.y[1]!r})")
    print(f"depth = {args.depth}")
    print(f"x = {float(res.midpoint):.15g}")
    print(f"x_exact = {res.midpoint}")
    print(f"interval = [{lo}, {hi}]")
    print(f"error_bound = {curve.h_bound(args.depth):.6e}")
    return 0


def cmd_polygon(args) -> int:
    _warn_level(args.k)
    line = export.polygon(args.k)
    if args.format == "svg":
        frame = curve.partition(0).rects[0]
        _emit(export.to_svg(polyline=line, style=_style(), frame=frame), args.output)
    elif args.format == "json":
        _emit(export.to_json(line), args.output)
    else:
        _emit(export.to_csv(line), args.output)
    return 0


def cmd_tessellate(args) -> int:
    _warn_level(2 * args.m)
    patch = export.tessellate(args.m)
    if args.format == "json":
        if args.reflect:
            raise UsageError("--reflect is only available for SVG output")
        _emit(export.to_json(patch), args.output)
        return 0
    mirrored = []
    if args.reflect:
        for copies in export.reflections(patch).values():
            mirrored.extend(copies)
    line = export.centres(patch) if args.curve else None
    _emit(export.to_svg(patch, line, _style(), mirrored=mirrored), args.output)
    return 0


def cmd_matrix(args) -> int:
    rule = printed_rule() if args.printed_rows else rule_omega()
    m = count_matrix(rule)
    names = [str(lab) for lab in ALL_LABELS]
    print("      " + " ".join(f"{n:>3}" for n in names))
    for name, row in zip(names, m):
        print(f"{name:>5} " + " ".join(f"{v:>3d}" for v in row))
    if args.eigen:
        lam, it = dominant_eigenvalue(m)
        print(f"eigenvalue = {lam:.15f} ({it} iterations)")
        print(f"phi^2      = {PHI_SQUARED:.15f}")
        print(f"numpy      = {max(abs(np.linalg.eigvals(m.astype(float)))):.15f}")
    return 0


def cmd_solve(args) -> int:
    if args.uniqueness:
        results = uniqueness_search(args.depth)
        connected = []
        for seed, res in results.items():
            print(
                f"seed A {seed[1].value}->{seed[2].value}: "
                f"{len(res.systems)} closed, {len(res.connected)} connected"
            )
            connected.extend(res.connected)
        orbits = system_orbits(connected)
        omega = omega_as_types()
        same = all(all(omega.get(t) == c for t, c in s.items()) for s in connected)
        print(f"orbits under transpose/reversal: {len(orbits)}")
        print(f"every connected system is part of omega: {same}")
        return 0 if len(orbits) == 1 and same else 1

    if args.free_indices:
        problem = problem_from_rule(printed_rule(), free_d_indices=True)
    elif args.printed_rows:
        problem = problem_from_rule(printed_rule())
    else:
        problem = problem_from_rule(rule_omega())
    systems = solve_decorations(problem)
    print(f"systems: {len(systems)}")
    for n, system in enumerate(systems, 1):
        print(f"system {n}:")
        for lab, dec in system.decorations:
            print(f"  {lab}: {dec}")
        for parent, pos, idx in system.indices:
            print(f"  {parent} child {pos + 1}: index {idx}")
    if args.printed_rows and not systems:
        diag = diagnose_printed_rows()
        for words in diag.free_words:
            for parent, row in words.items():
                if row != tuple(str(c) for c in printed_rule().labels(Label.parse(parent))):
                    print(f"  consistent row {parent} -> {' '.join(row)}")
    return 0


def cmd_verify(args) -> int:
    failed = 0
    for outcome in run_checks(args.max_depth):
        status = "PASS" if outcome.ok else "FAIL"
        print(f"{status}  {outcome.name:<28} {outcome.seconds:7.2f}s  {outcome.detail}")
        failed += not outcome.ok
    print(f"{failed} failed" if failed else "all checks passed")
    return 1 if failed else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fibcurve", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("supertile", help="omega^k applied to a seed tile")
    s.add_argument("--seed", type=_label, default=Label.parse("A1+"))
    s.add_argument("--k", type=_nonneg, default=3)
    s.add_argument("--format", choices=("json", "svg", "csv"), default="json")
    s.add_argument("--curve", action="store_true", help="overlay tile centres (svg)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_supertile)

    c = sub.add_parser("curve", help="evaluate the curve or its inverse")
    csub = c.add_subparsers(dest="curve_command", required=True)
    e = csub.add_parser("eval", help="approximate F(x)")
    e.add_argument("--x", type=_fraction, required=True, help="parameter as P/Q")
    e.add_argument("--depth", type=_nonneg, default=curve.DEFAULT_DEPTH)
    e.add_argument("--tie", choices=("left", "right"), default="left")
    e.add_argument("--chain", action="store_true", help="print the box chain")
    e.set_defaults(func=cmd_curve_eval)
    pr = csub.add_parser("preimage", help="a parameter mapped near a point")
    pr.add_argument("--y", type=_point, required=True, help="point as X,Y")
    pr.add_argument("--depth", type=_nonneg, default=curve.DEFAULT_DEPTH)
    pr.set_defaults(func=cmd_curve_preimage)

    g = sub.add_parser("polygon", help="k-th approximating polygon")
    g.add_argument("--k", type=_nonneg, default=3)
    g.add_argument("--format", choices=("svg", "csv", "json"), default="svg")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_polygon)

    t = sub.add_parser("tessellate", help="omega^(2m)(A1+) tiling of the quadrant")
    t.add_argument("--m", type=int, default=1)
    t.add_argument("--reflect", action="store_true", help="add mirrored quadrants")
    t.add_argument("--curve", action="store_true", help="overlay tile centres")
    t.add_argument("--format", choices=("svg", "json"), default="svg")
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_tessellate)

    m = sub.add_parser("matrix", help="24x24 count matrix of omega")
    m.add_argument("--eigen", action="store_true")
    m.add_argument("--printed-rows", action="store_true", help="use the uncorrected rows")
    m.set_defaults(func=cmd_matrix)

    d = sub.add_parser("solve-decorations", help="derive decoration endpoints")
    d.add_argument("--printed-rows", action="store_true", help="use the uncorrected rows")
    d.add_argument("--free-indices", action="store_true", help="let D-child indices vary")
    d.add_argument("--uniqueness", action="store_true", help="search all decorated tiles")
    d.add_argument("--depth", type=_nonneg, default=5, help="connectedness depth for --uniqueness")
    d.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="run the invariant suite")
    v.add_argument("--max-depth", type=_nonneg, default=6)
    v.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "m", 1) < 1:
        parser.print_usage(sys.stderr)
        print("fibcurve: error: --m must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"fibcurve: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
