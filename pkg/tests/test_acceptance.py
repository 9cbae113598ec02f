"""Acceptance criteria, each at its stated tolerance and time budget.

Every criterion records one PASS/FAIL line; the lines are printed in the
pytest terminal summary, or directly when this file is run as a script.
"""
import json
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from fibcurve import curve, export, substitution
from fibcurve.goldenfield import PHI, Point2, ZERO, GoldenInt, GoldenRat, fibonacci, phi_pow
from fibcurve.prototiles import ALL_LABELS, REFERENCE_DECORATIONS, Label
from fibcurve.solver import (
    problem_from_rule,
    reference_system,
    solve_decorations,
    verify_concatenation,
)
from fibcurve.substitution import (
    PHI_SQUARED,
    count_matrix,
    dominant_eigenvalue,
    printed_rule,
    supertile,
)

HERE = Path(__file__).resolve().parent
RESULTS: list[str] = []
PHI_F = (1 + math.sqrt(5)) / 2


def _cold():
    """Drop memoized geometry so timings include construction."""
    substitution._local_supertile.cache_clear()
    substitution.subtree_size.cache_clear()
    curve.partition.cache_clear()
    curve.labels_at_level.cache_clear()


@contextmanager
def criterion(number: int, name: str, budget: float):
    _cold()
    t0 = time.perf_counter()
    state = {"ok": False, "note": ""}
    try:
        yield state
        elapsed = time.perf_counter() - t0
        state["ok"] = elapsed < budget
        if not state["ok"]:
            raise AssertionError(f"took {elapsed:.2f}s, budget {budget}s")
    except BaseException as exc:
        state["note"] = state["note"] or f"{type(exc).__name__}: {exc}"[:120]
        raise
    finally:
        elapsed = time.perf_counter() - t0
        status = "PASS" if state["ok"] else "FAIL"
        line = f"[{status}] AC{number:<2} {name:<32} {elapsed:7.2f}s / {budget:g}s"
        if state["note"]:
            line += f"  {state['note']}"
        RESULTS.append(line)


def test_ac01_tile_counts():
    with criterion(1, "tile counts F(k+2)^2", 10):
        counts = [len(supertile(Label.parse("A1+"), k)) for k in range(11)]
        assert counts == [1, 4, 9, 25, 64, 169, 441, 1156, 3025, 7921, 20736]
        assert counts == [fibonacci(k + 2) ** 2 for k in range(11)]


def test_ac02_spectral():
    with criterion(2, "dominant eigenvalue phi^2", 1) as st:
        lam, iters = dominant_eigenvalue(count_matrix())
        st["note"] = f"lambda={lam:.15f}, {iters} iterations"
        assert abs(lam - 2.618033988749895) < 1e-9
        assert abs(lam - PHI_SQUARED) < 1e-9


def test_ac03_concatenation():
    with criterion(3, "decoration concatenation", 30):
        system = reference_system()
        for seed in ALL_LABELS:
            for k in range(7):
                patch = supertile(seed, k)
                report = verify_concatenation(patch, system, seed)
                assert report.ok, f"{seed} k={k}: {report.violation}"
                s0, e0 = system.points(seed)
                assert report.start == s0.scale(phi_pow(k))
                assert report.end == e0.scale(phi_pow(k))


def test_ac04_solver():
    with criterion(4, "decoration solver", 10):
        free = solve_decorations(problem_from_rule(printed_rule(), free_d_indices=True))
        assert len(free) == 1
        assert dict(free[0].decorations) == REFERENCE_DECORATIONS
        assert solve_decorations(problem_from_rule(printed_rule())) == []


def test_ac05_measure():
    with criterion(5, "measure preservation", 30):
        for k in range(9):
            p = curve.partition(k)
            total = sum((p.length(i) for i in range(1, len(p) + 1)), ZERO)
            assert total == 1
            assert all(p.length(i) == r.area() for i, r in enumerate(p.rects, 1))


def test_ac06_connectedness():
    with criterion(6, "connectedness", 30):
        for k in range(1, 7):
            assert curve.connectedness_check(k)
        assert not curve.connectedness_check(6, shuffle=0)


def test_ac07_endpoints():
    with criterion(7, "curve endpoints", 1):
        zero = curve.evaluate(0, 32)
        one = curve.evaluate(1, 32)
        for box in zero.boxes:
            assert box.origin == Point2(ZERO, ZERO)
        for box in one.boxes:
            assert box.x1 == 1 and box.y0 == 0
        bound = math.sqrt(2) * PHI_F ** -32
        for res in (zero, one):
            cx, cy = res.center_float()
            tx = 0.0 if res is zero else 1.0
            assert math.hypot(cx - tx, cy) <= bound
        for tie in ("left", "right"):
            cut = curve.evaluate(GoldenInt(2, -1), 32, tie=tie)
            assert cut.box.contains_point(Point2(ZERO, PHI - 1))
            cx, cy = cut.center_float()
            assert math.hypot(cx, cy - (PHI_F - 1)) <= bound


def test_ac08_surjectivity():
    with criterion(8, "preimage round trip", 60) as st:
        rng = random.Random(2024)
        bound = math.sqrt(2) * PHI_F ** -24
        worst = 0.0
        for _ in range(1000):
            y = (rng.random(), rng.random())
            x = curve.preimage(y, 24).midpoint
            cx, cy = curve.evaluate(x, 24).center_float()
            worst = max(worst, math.hypot(cx - y[0], cy - y[1]))
        st["note"] = f"worst {worst:.3e} <= {bound:.3e}"
        assert worst <= bound


def test_ac09_continuity():
    with criterion(9, "continuity modulus", 60) as st:
        rng = random.Random(99)
        g, h = curve.continuity_modulus(16)
        assert g == phi_pow(-32)
        half = GoldenRat(g, 2)
        worst = 0.0
        for _ in range(1000):
            x = Fraction(rng.randrange(10**15), 10**15)
            step = half.to_fraction(96) * Fraction(rng.randrange(1, 10**6), 10**6)
            y = x + step if x + step <= 1 else x - step
            assert abs(GoldenRat.coerce(x - y)) < half
            a = curve.evaluate(x, 16).center_float()
            b = curve.evaluate(y, 16).center_float()
            worst = max(worst, math.dist(a, b))
        st["note"] = f"worst {worst:.3e} <= 2h16 = {2 * h:.3e}"
        assert worst <= 2 * h


def test_ac10_polygons_and_tessellation():
    with criterion(10, "polygons and tessellation", 5):
        reference = json.loads((HERE / "data" / "reference_polylines.json").read_text())
        unit = curve.partition(0).rects[0]
        for k in range(1, 5):
            line = export.polygon(k)
            svg = export.to_svg(polyline=line, frame=unit)
            assert svg == (HERE / "golden" / f"polygon_k{k}.svg").read_text()
            got = line.simplified().to_float()
            ref = reference[f"polygon_{k}"]
            assert len(got) == len(ref)
            assert all(math.dist(p, q) <= 1e-3 for p, q in zip(got, ref))
        prev = None
        for m in (1, 2):
            patch = export.tessellate(m)
            assert patch.tiles[0].label == Label.parse("A1+")
            assert patch.tiles[0].translation == Point2(ZERO, ZERO)
            if prev is not None:
                assert patch.tiles[: len(prev)] == prev.tiles
            svg = export.to_svg(patch, export.centres(patch))
            assert svg == (HERE / "golden" / f"tessellation_m{m}.svg").read_text()
            got = export.centres(patch).simplified().to_float()
            ref = reference[f"tessellation_{m}"]
            assert len(got) == len(ref)
            assert all(math.dist(p, q) <= 1e-6 for p, q in zip(got, ref))
            prev = patch


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
