import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fibcurve.curve import (
    as_param,
    connectedness_check,
    continuity_modulus,
    evaluate,
    h_bound,
    labels_at_level,
    locate,
    partition,
    preimage,
    rects_connected,
)
from fibcurve.goldenfield import (
    ONE,
    PHI,
    ZERO,
    GoldenInt,
    GoldenRat,
    Point2,
    fibonacci,
    phi_pow,
)
from fibcurve.prototiles import ALL_LABELS

params = st.fractions(min_value=0, max_value=1, max_denominator=10**9)
points = st.tuples(st.floats(0, 1), st.floats(0, 1))




def test_level_zero():
    p = partition(0)
    assert len(p) == 1 and p.interval(1) == (ZERO, ONE)
    assert p.rects[0].width == 1 and p.rects[0].height == 1


def test_level_one():
    p = partition(1)
    assert [p.length(i) for i in range(1, 5)] == [
        GoldenInt(2, -1), GoldenInt(-3, 2), GoldenInt(5, -3), GoldenInt(-3, 2)
    ]
    assert [p.length(i) for i in range(1, 5)] == [phi_pow(-2), phi_pow(-3), phi_pow(-4), phi_pow(-3)]
    s = phi_pow(-1)
    origins = [r.origin for r in p.rects]
    assert origins == [Point2(ZERO, ZERO), Point2(ZERO, s), Point2(s, s), Point2(s, ZERO)]


def test_level_two_order():
    # columns/rows of the 3x3 golden grid, in the order J_1 .. J_9
    expected = [(0, 0), (1, 0), (1, 1), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1), (2, 0)]
    edges = [0.0, phi_pow(-2).to_float(), phi_pow(-1).to_float(), 1.0]

    def idx(v):
        return next(i for i in range(3) if edges[i] < v < edges[i + 1])

    got = [(idx(r.center().x.to_float()), idx(r.center().y.to_float())) for r in partition(2).rects]
    assert got == expected


def test_cut_points_in_units_of_phi_six():
    unit = phi_pow(6)  # 8 phi + 5
    lvl1 = [c * unit for c in partition(1).cuts[1:-1]]
    assert lvl1 == [3 * PHI + 2, 5 * PHI + 3, 6 * PHI + 4]
    lvl2 = [c * unit for c in partition(2).cuts[1:-1]]
    assert lvl2 == [PHI + 1, 2 * PHI + 1, 2 * PHI + 2, 3 * PHI + 2,
                    4 * PHI + 3, 5 * PHI + 3, 6 * PHI + 4, 7 * PHI + 4]


@pytest.mark.parametrize("k", range(9))
def test_measure_preservation(k):
    p = partition(k)
    assert len(p) == fibonacci(k + 2) ** 2
    assert p.cuts[0] == 0 and p.cuts[-1] == 1
    assert all(p.length(i) == r.area() for i, r in enumerate(p.rects, 1))


def test_locate_examples():
    assert locate(0, 4) == 1
    assert locate(1, 4) == fibonacci(6) ** 2
    assert locate(Fraction(1, 2), 1) == 2
    assert locate(GoldenInt(2, -1), 1) == 1  # shared endpoint goes left


@given(params, st.integers(min_value=0, max_value=6))
def test_locate_brackets(x, k):
    i = locate(x, k)
    lo, hi = partition(k).interval(i)
    assert lo <= GoldenRat.coerce(x) <= hi
    if i > 1:
        assert GoldenRat.coerce(x) > lo


@given(params, st.integers(min_value=1, max_value=7))
def test_evaluate_agrees_with_locate(x, depth):
    res = evaluate(x, depth)
    assert res.chain[-1] == (depth, locate(x, depth))
    assert partition(depth).rects[res.chain[-1][1] - 1] == res.box


@settings(max_examples=200)
@given(params, st.integers(min_value=1, max_value=24))
def test_box_chain_is_nested(x, depth):
    res = evaluate(x, depth)
    for level, (outer, inner) in enumerate(zip(res.boxes, res.boxes[1:]), 1):
        assert outer.contains_rect(inner)
        assert inner.diameter() <= h_bound(level) * (1 + 1e-12)
    # a D box has a single A child covering it, so shrinking can pause one level
    for outer, inner in zip(res.boxes, res.boxes[2:]):
        assert inner.area() < outer.area()
    lo, hi = res.interval
    assert lo <= res.x <= hi


def test_endpoints():
    for box in evaluate(0, 32).boxes:
        assert box.origin == Point2(ZERO, ZERO)
    for box in evaluate(1, 32).boxes:
        assert box.x1 == 1 and box.y0 == 0
    target = Point2(ZERO, PHI - 1)
    for tie in ("left", "right"):
        res = evaluate(GoldenInt(2, -1), 32, tie=tie)
        assert all(b.contains_point(target) for b in res.boxes)
        cx, cy = res.center_float()
        assert math.hypot(cx, cy - (PHI_F - 1)) <= h_bound(32)


PHI_F = (1 + math.sqrt(5)) / 2


@pytest.mark.parametrize("k", range(1, 6))
def test_cut_points_pin_one_limit(k):
    for c in partition(k).cuts:
        left = evaluate(c, k + 3, "left").boxes
        right = evaluate(c, k + 3, "right").boxes
        assert all(a.intersects(b) for a, b in zip(left, right))


def test_preimage_examples():
    assert preimage((0.0, 0.0), 10).interval[0] == 0
    last = preimage((1.0, 0.0), 10)
    assert last.chain[-1][1] == fibonacci(12) ** 2
    with pytest.raises(ValueError):
        preimage((1.5, 0.2), 4)


@settings(max_examples=150)
@given(points, st.integers(min_value=1, max_value=20))
def test_round_trip(y, depth):
    pre = preimage(y, depth)
    res = evaluate(pre.midpoint, depth)
    assert res.chain == pre.chain
    cx, cy = res.center_float()
    assert math.hypot(cx - y[0], cy - y[1]) <= h_bound(depth)


def test_exact_preimage():
    y = Point2(GoldenRat(1, 3), PHI - 1)
    pre = preimage(y, 12, exact=True)
    assert pre.box.contains_point(y)
    with pytest.raises(TypeError):
        preimage((0.1, 0.2), 3, exact=True)


@pytest.mark.parametrize("k", range(1, 7))
def test_connected(k):
    assert connectedness_check(k)


@pytest.mark.parametrize("seed", ALL_LABELS, ids=str)
def test_every_seed_is_connected(seed):
    assert connectedness_check(5, seed=seed)


def test_shuffled_order_is_not_connected():
    assert not connectedness_check(4, shuffle=3)
    rects = list(partition(2).rects)
    rects[1], rects[2] = rects[2], rects[1]
    assert not rects_connected(rects)


def test_continuity_modulus():
    assert continuity_modulus(0)[0] == 1
    assert continuity_modulus(1)[0] == GoldenInt(2, -1)
    prev = None
    for k in range(21):
        g, h = continuity_modulus(k)
        assert g == phi_pow(-2 * k)
        assert math.isclose(h, h_bound(k), rel_tol=1e-12)
        if prev:
            assert g < prev[0] and h < prev[1]
        prev = (g, h)
    assert max(p.length(i) for p in [partition(4)] for i in range(1, len(p) + 1)) == phi_pow(-8)


def test_continuity_sampled():
    rng = random.Random(11)
    n = 12
    g, h = continuity_modulus(n)
    half = GoldenRat(g, 2).to_fraction(64)
    for _ in range(200):
        x = Fraction(rng.randrange(10**9), 10**9)
        y = min(x + half * Fraction(rng.randrange(1000), 1000), Fraction(1))
        a = evaluate(x, n).center_float()
        b = evaluate(y, n).center_float()
        assert math.dist(a, b) <= 2 * h


def test_parameter_validation():
    assert as_param("3/7") == GoldenRat(3, 7)
    for bad in ("-1/2", "3/2", GoldenInt(0, 1)):
        with pytest.raises(ValueError):
            as_param(bad)
    with pytest.raises(TypeError):
        as_param(0.5)


def test_labels_present():
    assert len(labels_at_level(0)) == 1
    assert labels_at_level(6) <= set(ALL_LABELS)
