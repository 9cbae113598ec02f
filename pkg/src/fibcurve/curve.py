"""The Fibonacci space-filling curve F on the unit square.

Level k pairs the tiles of ``phi**(-k-1) * omega**k(A1+)`` (rectangles J)
with consecutive closed subintervals I of [0, 1] whose lengths are the tile
areas.  ``F(x)`` is the intersection of the nested rectangles whose intervals
contain ``x``.  All geometry here is exact in Z[phi]; floats only appear in
error bounds and in :func:`preimage` containment tests.
"""
from __future__ import annotations

import math
import random
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .goldenfield import (
    ONE,
    ZERO,
    GoldenInt,
    GoldenRat,
    PHI_FLOAT,
    Point2,
    Rect,
    phi_pow,
)
from .prototiles import DIMENSIONS, Label
from .substitution import (
    SubstitutionRule,
    rule_omega,
    subtree_size,
    supertile,
)

SEED = Label.parse("A1+")
DEFAULT_DEPTH = 32

Param = Union[int, Fraction, GoldenInt, GoldenRat, str]


def as_param(x: Param) -> GoldenRat:
    """Coerce a curve parameter to an exact value in [0, 1].

    Strings are read as ``P/Q`` (or a plain integer).
    """
    if isinstance(x, str):
        x = Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("curve parameters must be exact; pass a Fraction or 'P/Q'")
    r = GoldenRat.coerce(x)
    if r.sign() < 0 or r > 1:
        raise ValueError(f"parameter {x} is outside [0, 1]")
    return r


def h_bound(k: int) -> float:
    """``sqrt(2) * phi**-k``: diameter of a level-k A rectangle."""
    return math.sqrt(2.0) * PHI_FLOAT ** (-k)


# ---------------------------------------------------------------------------
# partitions


@dataclass(frozen=True)
class PartitionLevel:
    k: int
    labels: tuple[Label, ...]
    rects: tuple[Rect, ...]
    cuts: tuple[GoldenInt, ...]  # c_0 = 0 < c_1 < ... < c_N = 1

    def __len__(self) -> int:
        return len(self.rects)

    def interval(self, i: int) -> tuple[GoldenInt, GoldenInt]:
        """The closed interval ``I_i`` (1-based)."""
        return self.cuts[i - 1], self.cuts[i]

    def length(self, i: int) -> GoldenInt:
        return self.cuts[i] - self.cuts[i - 1]


@lru_cache(maxsize=32)
def partition(k: int) -> PartitionLevel:
    if k < 0:
        raise ValueError("k must be non-negative")
    s = phi_pow(-k - 1)
    patch = supertile(SEED, k)
    rects = tuple(t.rect.scale(s) for t in patch.tiles)
    cuts = [ZERO]
    for r in rects:
        cuts.append(cuts[-1] + r.area())
    return PartitionLevel(k, tuple(patch.labels()), rects, tuple(cuts))


def locate(x: Param, k: int) -> int:
    """1-based index of the level-k interval containing x; ties go left."""
    x = as_param(x)
    cuts = partition(k).cuts
    # smallest i >= 1 with x <= c_i
    i = bisect_left(_CutView(cuts), x, 1, len(cuts))
    return i


class _CutView(Sequence):
    """Lets :func:`bisect_left` compare GoldenRat keys against GoldenInt cuts."""

    def __init__(self, cuts):
        self.cuts = cuts

    def __len__(self):
        return len(self.cuts)

    def __getitem__(self, i):
        return GoldenRat.coerce(self.cuts[i])


# ---------------------------------------------------------------------------
# evaluation


@dataclass(frozen=True)
class _Node:
    label: Label
    rect: Rect
    lo: GoldenInt  # interval start
    hi: GoldenInt


def _root() -> _Node:
    return _Node(SEED, Rect(Point2(ZERO, ZERO), ONE, ONE), ZERO, ONE)


def _children(node: _Node, level: int, rule: SubstitutionRule) -> list[_Node]:
    """Level ``level + 1`` children of a level ``level`` node, in curve order."""
    s = phi_pow(-level - 2)
    area_scale = s * s
    out = []
    lo = node.lo
    for child in rule[node.label]:
        w, h = DIMENSIONS[child.label.color]
        rect = Rect(node.rect.origin + child.offset.scale(s), w * s, h * s)
        hi = lo + child.label.area() * area_scale
        out.append(_Node(child.label, rect, lo, hi))
        lo = hi
    return out


class _IndexTracker:
    """Global 1-based indices along a descent, via subtree sizes."""

    def __init__(self, rule: SubstitutionRule):
        self.rule = rule
        self.before: list[tuple[Label, int]] = []  # (earlier sibling, its level)

    def step(self, siblings: Sequence[_Node], j: int, level: int) -> int:
        for s in siblings[:j]:
            self.before.append((s.label, level))
        return 1 + sum(subtree_size(lab, level - lv, self.rule) for lab, lv in self.before)


@dataclass(frozen=True)
class EvalResult:
    x: GoldenRat
    depth: int
    chain: tuple[tuple[int, int], ...]  # (level, 1-based index), levels 0..depth
    labels: tuple[Label, ...]
    boxes: tuple[Rect, ...]
    interval: tuple[GoldenInt, GoldenInt]
    error_bound: float

    @property
    def box(self) -> Rect:
        return self.boxes[-1]

    @property
    def center(self) -> Point2:
        return self.box.center()

    def center_float(self) -> tuple[float, float]:
        return self.center.to_float()


def evaluate(
    x: Param,
    depth: int = DEFAULT_DEPTH,
    tie: str = "left",
    rule: SubstitutionRule | None = None,
) -> EvalResult:
    """Approximate ``F(x)`` by the level-``depth`` rectangle containing it.

    Each level only looks at the children of the previous rectangle.  When x
    is a shared endpoint of two child intervals, ``tie`` selects the left or
    right one; both lead to the same limit point.  ``F(x)`` lies in every box
    and the final centre is within ``sqrt(2) * phi**-depth`` of it.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if tie not in ("left", "right"):
        raise ValueError("tie must be 'left' or 'right'")
    x = as_param(x)
    rule = rule or rule_omega()
    node = _root()
    tracker = _IndexTracker(rule)
    chain = [(0, 1)]
    labels = [node.label]
    boxes = [node.rect]
    for level in range(depth):
        kids = _children(node, level, rule)
        j = _pick_interval(kids, x, tie)
        node = kids[j]
        chain.append((level + 1, tracker.step(kids, j, level + 1)))
        labels.append(node.label)
        boxes.append(node.rect)
    return EvalResult(
        x, depth, tuple(chain), tuple(labels), tuple(boxes), (node.lo, node.hi), h_bound(depth)
    )


def _pick_interval(kids: Sequence[_Node], x: GoldenRat, tie: str) -> int:
    if tie == "left":
        for j, kid in enumerate(kids):
            if x <= kid.hi:
                return j
        return len(kids) - 1
    for j in range(len(kids) - 1, -1, -1):
        if x >= kids[j].lo:
            return j
    return 0


# ---------------------------------------------------------------------------
# inverse


@dataclass(frozen=True)
class PreimageResult:
    y: tuple
    depth: int
    chain: tuple[tuple[int, int], ...]
    box: Rect
    interval: tuple[GoldenInt, GoldenInt]
    midpoint: GoldenRat
    x: Fraction  # dyadic approximation of ``midpoint``


def _outward(rect: Rect) -> tuple[float, float, float, float]:
    x0, y0, x1, y1 = rect.to_float()
    return (
        math.nextafter(x0, -math.inf),
        math.nextafter(y0, -math.inf),
        math.nextafter(x1, math.inf),
        math.nextafter(y1, math.inf),
    )


def _float_contains(rect: Rect, y: tuple[float, float]) -> bool:
    x0, y0, x1, y1 = _outward(rect)
    return x0 <= y[0] <= x1 and y0 <= y[1] <= y1


def _float_distance(rect: Rect, y: tuple[float, float]) -> float:
    x0, y0, x1, y1 = rect.to_float()
    dx = max(x0 - y[0], 0.0, y[0] - x1)
    dy = max(y0 - y[1], 0.0, y[1] - y1)
    return math.hypot(dx, dy)


def preimage(
    y,
    depth: int = DEFAULT_DEPTH,
    exact: bool = False,
    rule: SubstitutionRule | None = None,
) -> PreimageResult:
    """A parameter x with ``F(x)`` within ``sqrt(2) * phi**-depth`` of y.

    At each level the first child rectangle (in curve order) containing y is
    chosen.  Float input is tested against rectangle bounds rounded outward;
    with ``exact=True``, y must be a :class:`Point2` and tests are exact.
    """
    rule = rule or rule_omega()
    if exact:
        if not isinstance(y, Point2):
            raise TypeError("exact preimage needs a Point2")
        if not _root().rect.contains_point(y):
            raise ValueError(f"point {y} is outside the unit square")
        inside = lambda rect: rect.contains_point(y)  # noqa: E731
        key = (y.x, y.y)
    else:
        yf = (float(y[0]), float(y[1]))
        if not all(math.isfinite(c) and 0.0 <= c <= 1.0 for c in yf):
            raise ValueError(f"point {yf} is outside the unit square")
        inside = lambda rect: _float_contains(rect, yf)  # noqa: E731
        key = yf

    node = _root()
    tracker = _IndexTracker(rule)
    chain = [(0, 1)]
    for level in range(depth):
        kids = _children(node, level, rule)
        j = next((j for j, kid in enumerate(kids) if inside(kid.rect)), None)
        if j is None:
            # only reachable through float rounding at the parent boundary
            j = min(range(len(kids)), key=lambda i: _float_distance(kids[i].rect, yf))
        node = kids[j]
        chain.append((level + 1, tracker.step(kids, j, level + 1)))
    mid = GoldenRat(node.lo + node.hi, 2)
    return PreimageResult(
        key, depth, tuple(chain), node.rect, (node.lo, node.hi), mid, mid.to_fraction(128)
    )


# ---------------------------------------------------------------------------
# connectedness and continuity


def rects_connected(rects: Sequence[Rect]) -> bool:
    """Every consecutive pair meets in a segment of positive length."""
    return all(a.shares_edge(b) for a, b in zip(rects, rects[1:]))


def connectedness_check(
    k: int, seed: Label | str | None = None, shuffle: int | None = None
) -> bool:
    """Edge adjacency of consecutive level-k rectangles.

    ``seed`` picks a different supertile; ``shuffle`` permutes the order with
    the given RNG seed (a negative control that should fail).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if seed is None:
        rects = list(partition(k).rects)
    else:
        seed = Label.parse(seed) if isinstance(seed, str) else seed
        rects = [t.rect for t in supertile(seed, k).tiles]
    if shuffle is not None:
        random.Random(shuffle).shuffle(rects)
    return rects_connected(rects)


@lru_cache(maxsize=None)
def labels_at_level(k: int) -> frozenset[Label]:
    present = {SEED}
    rule = rule_omega()
    for _ in range(k):
        present = {c.label for lab in present for c in rule[lab]}
    return frozenset(present)


def continuity_modulus(k: int) -> tuple[GoldenInt, float]:
    """``(g_k, h_k)``: largest interval length and largest rectangle diameter."""
    if k < 0:
        raise ValueError("k must be non-negative")
    s = phi_pow(-k - 1)
    present = labels_at_level(k)
    g = max(lab.area() for lab in present) * s * s
    h = max(math.hypot(float(lab.width * s), float(lab.height * s)) for lab in present)
    return g, h
