"""Invariant checks run by ``fibcurve verify``.

Each check returns ``(ok, detail)``.  They exercise every module on small,
deterministic inputs; ``max_depth`` bounds the levels that are built.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import curve, export
from .goldenfield import GoldenInt, GoldenRat, PHI, Point2, ZERO, fibonacci, phi_pow
from .prototiles import ALL_LABELS, REFERENCE_DECORATIONS, Label
from .solver import (
    diagnose_printed_rows,
    reference_system,
    verify_concatenation,
)
from .substitution import (
    PHI_SQUARED,
    count_matrix,
    dominant_eigenvalue,
    rule_omega,
    supertile,
)

Result = tuple[bool, str]


@dataclass
class CheckOutcome:
    name: str
    ok: bool
    detail: str
    seconds: float


def check_golden_arithmetic(max_depth: int) -> Result:
    rng = random.Random(0)
    for _ in range(2000):
        a, b = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        u = GoldenInt(a, b)
        f = a + b * (1 + math.sqrt(5)) / 2
        if abs(f) > 1e-6 * (abs(a) + abs(b)) and u.sign() != (1 if f > 0 else -1):
            return False, f"sign({u}) disagrees with float {f}"
    for n in range(-40, 41):
        if phi_pow(n) * phi_pow(-n) != 1 or phi_pow(n + 1) != phi_pow(n) * PHI:
            return False, f"phi_pow({n}) inconsistent"
    return True, "sign and phi powers consistent"


def check_tile_counts(max_depth: int) -> Result:
    for k in range(max_depth + 1):
        n = len(supertile(Label.parse("A1+"), k))
        if n != fibonacci(k + 2) ** 2:
            return False, f"k={k}: {n} tiles, expected {fibonacci(k + 2) ** 2}"
    return True, f"|omega^k(A1+)| = F(k+2)^2 for k <= {max_depth}"


def check_eigenvalue(max_depth: int) -> Result:
    lam, it = dominant_eigenvalue(count_matrix())
    ok = abs(lam - PHI_SQUARED) < 1e-9
    return ok, f"lambda = {lam:.15f} after {it} iterations"


def check_concatenation(max_depth: int) -> Result:
    system = reference_system()
    depth = min(max_depth, 6)
    for seed in ALL_LABELS:
        for k in range(depth + 1):
            rep = verify_concatenation(supertile(seed, k), system)
            if not rep.ok:
                return False, f"{seed} k={k}: {rep.violation}"
    return True, f"24 seeds chain exactly for k <= {depth}"


def check_solver(max_depth: int) -> Result:
    diag = diagnose_printed_rows()
    ref = {str(k): str(v) for k, v in REFERENCE_DECORATIONS.items()}
    if len(diag.free) != 1 or diag.free[0].as_dict() != ref:
        return False, f"free-index search found {len(diag.free)} systems"
    if diag.printed:
        return False, "printed rows admit a decoration system"
    if len(diag.corrected) != 1:
        return False, "corrected rows do not have a unique system"
    return True, "unique decoration system; printed rows have none"


def check_measure(max_depth: int) -> Result:
    for k in range(max_depth + 1):
        p = curve.partition(k)
        if p.cuts[0] != ZERO or p.cuts[-1] != 1:
            return False, f"k={k}: lengths do not sum to 1"
        for i, r in enumerate(p.rects, 1):
            if p.length(i) != r.area():
                return False, f"k={k}: |I_{i}| != area(J_{i})"
    return True, f"lengths equal areas for k <= {max_depth}"


def check_nesting(max_depth: int) -> Result:
    rule = rule_omega()
    for k in range(max_depth):
        hi, lo = curve.partition(k), curve.partition(k + 1)
        j = 0
        for i, lab in enumerate(hi.labels):
            for _ in rule[lab]:
                if not hi.rects[i].contains_rect(lo.rects[j]):
                    return False, f"level {k + 1} rect {j + 1} escapes its parent"
                a, b = lo.interval(j + 1)
                c, d = hi.interval(i + 1)
                if a < c or b > d:
                    return False, f"level {k + 1} interval {j + 1} escapes its parent"
                j += 1
    return True, f"rects and intervals nested for k <= {max_depth}"


def check_connectedness(max_depth: int) -> Result:
    for k in range(1, max_depth + 1):
        if not curve.connectedness_check(k):
            return False, f"level {k} is not edge-connected"
    for seed in ALL_LABELS:
        if not curve.connectedness_check(min(max_depth, 4), seed=seed):
            return False, f"supertile of {seed} is not edge-connected"
    if max_depth >= 2 and curve.connectedness_check(max_depth, shuffle=1):
        return False, "shuffled order passed the connectedness test"
    return True, f"edge-connected for k <= {max_depth}, shuffled control fails"


def check_endpoints(max_depth: int) -> Result:
    d = max(max_depth, 1)
    for level, box in enumerate(curve.evaluate(0, d).boxes):
        if box.origin != Point2(ZERO, ZERO):
            return False, f"eval(0) box at level {level} misses (0,0)"
    for level, box in enumerate(curve.evaluate(1, d).boxes):
        if box.x1 != 1 or box.y0 != 0:
            return False, f"eval(1) box at level {level} misses (1,0)"
    target = Point2(ZERO, PHI - 1)
    for tie in ("left", "right"):
        if not all(b.contains_point(target) for b in curve.evaluate(GoldenInt(2, -1), d, tie).boxes):
            return False, f"eval(2-phi, tie={tie}) misses (0, phi-1)"
    return True, "F(0)=(0,0), F(1)=(1,0), F(2-phi)=(0,phi-1)"


def check_boundaries(max_depth: int) -> Result:
    depth = min(max_depth, 5)
    for k in range(1, depth + 1):
        for c in curve.partition(k).cuts:
            left = curve.evaluate(c, depth + 2, "left").boxes
            right = curve.evaluate(c, depth + 2, "right").boxes
            if not all(a.intersects(b) for a, b in zip(left, right)):
                return False, f"cut {c} at level {k} has separated descents"
    return True, f"left and right descents meet at every cut, k <= {depth}"


def check_round_trip(max_depth: int) -> Result:
    rng = random.Random(1)
    d = max(max_depth, 1)
    for _ in range(100):
        y = (rng.random(), rng.random())
        x = curve.preimage(y, d).midpoint
        cx, cy = curve.evaluate(x, d).center_float()
        if math.hypot(cx - y[0], cy - y[1]) > curve.h_bound(d):
            return False, f"round trip of {y} misses by more than the bound"
    return True, f"100 round trips within sqrt(2)*phi^-{d}"


def check_continuity(max_depth: int) -> Result:
    rng = random.Random(2)
    d = max(max_depth, 1)
    g, h = curve.continuity_modulus(d)
    half = GoldenRat(g, 2)
    for _ in range(100):
        x = Fraction(rng.randrange(10**12), 10**12)
        step = half.to_fraction(64) * Fraction(rng.randrange(1, 1000), 1000)
        y = min(x + step, Fraction(1))
        a = curve.evaluate(x, d).center_float()
        b = curve.evaluate(y, d).center_float()
        if math.dist(a, b) > 2 * h:
            return False, f"|F({x}) - F({y})| exceeds 2 h_{d}"
    return True, f"100 close pairs within 2*h_{d}"


def check_export(max_depth: int) -> Result:
    k = min(max_depth, 3)
    line = export.polygon(k)
    rects = curve.partition(k).rects
    if not all(r.contains_point(p) for r, p in zip(rects, line.points)):
        return False, "polygon vertex outside its rectangle"
    patch = supertile(Label.parse("B2-"), k)
    if export.from_json(export.to_json(patch)) != patch:
        return False, "JSON round trip changed the patch"
    if export.to_svg(patch, line) != export.to_svg(patch, line):
        return False, "SVG output is not deterministic"
    return True, "polygon, JSON and SVG consistent"


CHECKS: list[tuple[str, Callable[[int], Result]]] = [
    ("golden arithmetic", check_golden_arithmetic),
    ("tile counts", check_tile_counts),
    ("perron-frobenius eigenvalue", check_eigenvalue),
    ("decoration concatenation", check_concatenation),
    ("decoration solver", check_solver),
    ("measure preservation", check_measure),
    ("nesting", check_nesting),
    ("connectedness", check_connectedness),
    ("curve endpoints", check_endpoints),
    ("cut well-definedness", check_boundaries),
    ("preimage round trip", check_round_trip),
    ("continuity", check_continuity),
    ("export", check_export),
]


def run_checks(max_depth: int) -> list[CheckOutcome]:
    out = []
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            ok, detail = fn(max_depth)
        except Exception as exc:  # a crash is a failed invariant
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckOutcome(name, ok, detail, time.perf_counter() - t0))
    return out
