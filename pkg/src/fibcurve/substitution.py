"""Geometric substitutions: the Fibonacci rule, its Cartesian square and omega.

The decorated rule omega is stored as its one-dimensional reading: for each
label, the children in the order their decorations are traversed.  Child
positions are not stored separately because each color occupies a fixed cell
of the Cartesian-square layout::

    A parent: A (0,0)  C (phi,0)  B (0,phi)  D (phi,phi)
    B parent: A (0,0)  C (phi,0)
    C parent: A (0,0)  B (0,phi)
    D parent: A (0,0)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .goldenfield import (
    ONE,
    ORIGIN,
    PHI,
    PHI_FLOAT,
    ZERO,
    GoldenInt,
    Point2,
    Rect,
    phi_pow,
)
from .prototiles import ALL_LABELS, BASE_LABELS, Color, Label

EXPANSION = PHI

# Cell of each child color inside a phi-inflated parent of a given color.
CELLS: dict[Color, dict[Color, Point2]] = {
    Color.A: {
        Color.A: Point2(ZERO, ZERO),
        Color.C: Point2(PHI, ZERO),
        Color.B: Point2(ZERO, PHI),
        Color.D: Point2(PHI, PHI),
    },
    Color.B: {Color.A: Point2(ZERO, ZERO), Color.C: Point2(PHI, ZERO)},
    Color.C: {Color.A: Point2(ZERO, ZERO), Color.B: Point2(ZERO, PHI)},
    Color.D: {Color.A: Point2(ZERO, ZERO)},
}


# ---------------------------------------------------------------------------
# one-dimensional Fibonacci substitution


@dataclass(frozen=True)
class OneDimRule:
    images: dict
    lengths: dict
    expansion: GoldenInt = PHI

    def apply(self, word: Sequence[str]) -> list[str]:
        return [c for letter in word for c in self.images[letter]]

    def iterate(self, word: Sequence[str], k: int) -> list[str]:
        out = list(word)
        for _ in range(k):
            out = self.apply(out)
        return out

    def length(self, word: Sequence[str]) -> GoldenInt:
        total = ZERO
        for letter in word:
            total = total + self.lengths[letter]
        return total


def rule_mu1() -> OneDimRule:
    """A -> AB, B -> A on intervals of length phi and 1."""
    return OneDimRule(images={"A": ("A", "B"), "B": ("A",)}, lengths={"A": PHI, "B": ONE})


def rule_mu2() -> dict[Color, tuple[tuple[Color, Point2], ...]]:
    """The Cartesian square of mu1 on the four colored rectangles."""
    return {parent: tuple(cells.items()) for parent, cells in CELLS.items()}


# ---------------------------------------------------------------------------
# omega

PRINTED_NU_ROWS: dict[str, tuple[str, ...]] = {
    "A1+": ("A4-", "B1+", "D2+", "C1-"),
    "A2+": ("C1+", "A3+", "B1+", "D1-"),
    "A3+": ("D2-", "C2-", "A2+", "B2+"),
    "A4+": ("B2-", "D1+", "C2-", "A1-"),
    "B1+": ("A1+", "C2+"),
    "B2+": ("C1+", "A3+"),
    "C1+": ("A2+", "B2+"),
    "C2+": ("A4-", "B1+"),
    "A1-": ("C1+", "D2-", "B1-", "A4+"),
    "A2-": ("D1+", "B1-", "A3-", "C1-"),
    "A3-": ("B2-", "A2-", "C2+", "D2+"),
    "A4-": ("A1+", "C2+", "D1-", "B2+"),
    "B1-": ("C2-", "A1-"),
    "B2-": ("A3-", "C1-"),
    "C1-": ("B2-", "A2-"),
    "C2-": ("B1-", "A4+"),
    "D1+": ("A1+",),
    "D2+": ("A2+",),
    "D3+": ("A3+",),
    "D4+": ("A4+",),
    "D1-": ("A1-",),
    "D2-": ("A2-",),
    "D3-": ("A3-",),
    "D4-": ("A4-",),
}

# The two D-children whose indices disagree with decoration concatenation.
CORRECTIONS: dict[tuple[str, int], str] = {
    ("A1+", 2): "D4+",
    ("A2+", 3): "D3-",
}


@dataclass(frozen=True)
class Child:
    label: Label
    offset: Point2


@dataclass(frozen=True, eq=False)
class SubstitutionRule:
    """Ordered children for every label; expansion factor phi."""

    rows: tuple[tuple[Label, tuple[Child, ...]], ...]
    name: str = "omega"
    _table: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_table", dict(self.rows))

    def __getitem__(self, label: Label) -> tuple[Child, ...]:
        return self._table[label]

    def __contains__(self, label: Label) -> bool:
        return label in self._table

    @property
    def expansion(self) -> GoldenInt:
        return EXPANSION

    def labels(self, label: Label) -> list[Label]:
        return [c.label for c in self._table[label]]

    def as_words(self) -> dict[str, tuple[str, ...]]:
        return {str(p): tuple(str(c.label) for c in row) for p, row in self.rows}


def _row(parent: Label, children: Iterable[Label]) -> tuple[Child, ...]:
    cells = CELLS[parent.color]
    return tuple(Child(c, cells[c.color]) for c in children)


def reverse_row(children: Sequence[Label]) -> list[Label]:
    return [c.reverse() for c in reversed(children)]


def rule_from_words(words: dict[str, Sequence[str]], name: str = "omega") -> SubstitutionRule:
    """Build a rule from label words.

    Rows for ``-`` labels missing from ``words`` are generated from the
    ``+`` row by reversal with every child sign flipped.
    """
    table: dict[Label, list[Label]] = {
        Label.parse(k): [Label.parse(c) for c in v] for k, v in words.items()
    }
    for lab in list(table):
        if lab.reverse() not in table:
            table[lab.reverse()] = reverse_row(table[lab])
    missing = [str(lab) for lab in ALL_LABELS if lab not in table]
    if missing:
        raise ValueError(f"rule has no row for {', '.join(missing)}")
    for parent, kids in table.items():
        colors = sorted(c.color.value for c in kids)
        expected = sorted(c.value for c in CELLS[parent.color])
        if colors != expected:
            raise ValueError(f"row {parent} does not tile the inflated {parent.color} cell")
    rows = tuple((lab, _row(lab, table[lab])) for lab in ALL_LABELS)
    return SubstitutionRule(rows, name=name)


def corrected_words() -> dict[str, tuple[str, ...]]:
    words = {k: list(v) for k, v in PRINTED_NU_ROWS.items() if k.endswith("+")}
    for (parent, pos), child in CORRECTIONS.items():
        words[parent][pos] = child
    return {k: tuple(v) for k, v in words.items()}


@lru_cache(maxsize=None)
def rule_omega() -> SubstitutionRule:
    """The decorated substitution with the corrected D-indices."""
    return rule_from_words(corrected_words(), name="omega")


@lru_cache(maxsize=None)
def printed_rule() -> SubstitutionRule:
    """The rule exactly as printed, all 24 rows transcribed (diagnostics only)."""
    return rule_from_words(PRINTED_NU_ROWS, name="printed")


def reversal_symmetric(words: dict[str, Sequence[str]]) -> list[str]:
    """Labels whose printed ``-`` row is not the reversed, sign-flipped ``+`` row."""
    bad = []
    for base in BASE_LABELS:
        plus = [Label.parse(c) for c in words[str(base)]]
        minus = [Label.parse(c) for c in words[str(base.reverse())]]
        if reverse_row(plus) != minus:
            bad.append(str(base))
    return bad


# ---------------------------------------------------------------------------
# patches


@dataclass(frozen=True)
class PlacedTile:
    label: Label
    translation: Point2

    @property
    def rect(self) -> Rect:
        return Rect(self.translation, self.label.width, self.label.height)


@dataclass(frozen=True)
class Patch:
    tiles: tuple[PlacedTile, ...]
    support: Rect
    level: int = 0
    seed: Label | None = None

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    def labels(self) -> list[Label]:
        return [t.label for t in self.tiles]


def single(label: Label, translation: Point2 = ORIGIN) -> Patch:
    tile = PlacedTile(label, translation)
    return Patch((tile,), tile.rect, 0, label)


def apply(patch: Patch, rule: SubstitutionRule | None = None) -> Patch:
    """One substitution step: tile ``(L, t)`` becomes ``omega(L) + phi*t``."""
    rule = rule or rule_omega()
    out = []
    for tile in patch.tiles:
        t = tile.translation.scale(PHI)
        for child in rule[tile.label]:
            out.append(PlacedTile(child.label, t + child.offset))
    return Patch(tuple(out), patch.support.scale(PHI), patch.level + 1, patch.seed)


@lru_cache(maxsize=4096)
def _local_supertile(rule: SubstitutionRule, label: Label, k: int) -> tuple[PlacedTile, ...]:
    if k == 0:
        return (PlacedTile(label, ORIGIN),)
    scale = phi_pow(k - 1)
    out: list[PlacedTile] = []
    for child in rule[label]:
        shift = child.offset.scale(scale)
        for t in _local_supertile(rule, child.label, k - 1):
            out.append(PlacedTile(t.label, t.translation + shift))
    return tuple(out)


def supertile(seed: Label, k: int, rule: SubstitutionRule | None = None) -> Patch:
    """``omega^k(seed)`` in curve order, anchored at the origin."""
    if k < 0:
        raise ValueError("k must be non-negative")
    rule = rule or rule_omega()
    tiles = _local_supertile(rule, seed, k)
    return Patch(tiles, seed.support().scale(phi_pow(k)), k, seed)


def nu_word(seed: Label, k: int, rule: SubstitutionRule | None = None) -> list[Label]:
    rule = rule or rule_omega()
    word = [seed]
    for _ in range(k):
        word = [c for lab in word for c in rule.labels(lab)]
    return word


@lru_cache(maxsize=None)
def subtree_size(label: Label, m: int, rule: SubstitutionRule | None = None) -> int:
    """Number of tiles in ``omega^m(label)``."""
    if m == 0:
        return 1
    rule = rule or rule_omega()
    return sum(subtree_size(c.label, m - 1, rule) for c in rule[label])


def label_counts(patch_or_labels) -> np.ndarray:
    labels = patch_or_labels.labels() if isinstance(patch_or_labels, Patch) else patch_or_labels
    v = np.zeros(len(ALL_LABELS), dtype=object)
    for lab in labels:
        v[lab.position - 1] += 1
    return v


# ---------------------------------------------------------------------------
# count matrix


class ConvergenceError(RuntimeError):
    pass


def count_matrix(rule: SubstitutionRule | None = None) -> np.ndarray:
    """``M[i, j]`` = number of times p_{j+1} occurs in omega(p_{i+1})."""
    rule = rule or rule_omega()
    m = np.zeros((24, 24), dtype=np.int64)
    for lab in ALL_LABELS:
        for child in rule[lab]:
            m[lab.position - 1, child.label.position - 1] += 1
    return m


def dominant_eigenvalue(
    m: np.ndarray, tol: float = 1e-12, max_iter: int = 10_000
) -> tuple[float, int]:
    """Perron-Frobenius eigenvalue of a nonnegative matrix by power iteration.

    Returns ``(eigenvalue, iterations)``.  Stops once the residual
    ``|M x - lam x|`` of the normalised iterate drops below ``tol``.
    """
    a = np.asarray(m, dtype=float)
    x = np.ones(a.shape[0]) / np.sqrt(a.shape[0])
    for it in range(1, max_iter + 1):
        y = a @ x
        norm = np.linalg.norm(y)
        if norm == 0.0:
            raise ConvergenceError("iterate collapsed to zero")
        lam = float(x @ y)
        if np.linalg.norm(y - lam * x) < tol * max(1.0, abs(lam)):
            return lam, it
        x = y / norm
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps")


PHI_SQUARED = PHI_FLOAT * PHI_FLOAT
