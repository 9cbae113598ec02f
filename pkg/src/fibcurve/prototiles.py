"""The 24 decorated rectangle prototiles.

Each prototile is a rectangle of color A (phi x phi), B (phi x 1),
C (1 x phi) or D (1 x 1) carrying an oriented decoration between two of its
corners.  Labels are written ``A1+``, ``D3-`` and so on; flipping the sign
reverses the decoration and keeps the rectangle.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache

from .goldenfield import ONE, PHI, GoldenInt, Point2, Rect, ZERO, ORIGIN


class Color(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"

    def __str__(self) -> str:
        return self.value


DIMENSIONS: dict[Color, tuple[GoldenInt, GoldenInt]] = {
    Color.A: (PHI, PHI),
    Color.B: (PHI, ONE),
    Color.C: (ONE, PHI),
    Color.D: (ONE, ONE),
}

INDEX_COUNT = {Color.A: 4, Color.B: 2, Color.C: 2, Color.D: 4}

_LABEL_RE = re.compile(r"^\s*([ABCD])\s*([1-4])\s*([+-])\s*$")


@dataclass(frozen=True, order=True)
class Label:
    color: Color
    index: int
    sign: int  # +1 or -1

    def __post_init__(self) -> None:
        if not isinstance(self.color, Color):
            object.__setattr__(self, "color", Color(self.color))
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        if not 1 <= self.index <= INDEX_COUNT[self.color]:
            raise ValueError(f"no prototile {self.color}{self.index}")

    @classmethod
    def parse(cls, text: str) -> Label:
        m = _LABEL_RE.match(text.replace("−", "-"))
        if not m:
            raise ValueError(f"not a tile label: {text!r}")
        color, index, sgn = m.groups()
        return cls(Color(color), int(index), 1 if sgn == "+" else -1)

    def reverse(self) -> Label:
        return Label(self.color, self.index, -self.sign)

    @property
    def base(self) -> Label:
        """The ``+`` label with the same color and index."""
        return self if self.sign > 0 else self.reverse()

    @property
    def width(self) -> GoldenInt:
        return DIMENSIONS[self.color][0]

    @property
    def height(self) -> GoldenInt:
        return DIMENSIONS[self.color][1]

    def area(self) -> GoldenInt:
        w, h = DIMENSIONS[self.color]
        return w * h

    def support(self) -> Rect:
        return Rect(ORIGIN, self.width, self.height)

    @property
    def position(self) -> int:
        """1-based prototile number p_1..p_24."""
        return _POSITION[self]

    def __str__(self) -> str:
        return f"{self.color.value}{self.index}{'+' if self.sign > 0 else '-'}"

    def __repr__(self) -> str:
        return f"Label({str(self)!r})"


def L(text: str) -> Label:
    """Shorthand for :meth:`Label.parse`."""
    return Label.parse(text)


def _build_labels() -> tuple[Label, ...]:
    out = []
    for sgn in (1, -1):
        for color in Color:
            for i in range(1, INDEX_COUNT[color] + 1):
                out.append(Label(color, i, sgn))
    return tuple(out)


ALL_LABELS: tuple[Label, ...] = _build_labels()
BASE_LABELS: tuple[Label, ...] = ALL_LABELS[:12]
_POSITION = {label: i + 1 for i, label in enumerate(ALL_LABELS)}


def prototile_set() -> list[tuple[Label, GoldenInt, GoldenInt]]:
    """All 24 prototiles in order p_1..p_24 as ``(label, width, height)``."""
    return [(lab, lab.width, lab.height) for lab in ALL_LABELS]


def color_project(label: Label) -> Color:
    return label.color


class Corner(str, enum.Enum):
    BL = "BL"
    BR = "BR"
    TR = "TR"
    TL = "TL"

    def resolve(self, width, height) -> Point2:
        x = ZERO if self in (Corner.BL, Corner.TL) else width
        y = ZERO if self in (Corner.BL, Corner.BR) else height
        return Point2(x, y)

    def __str__(self) -> str:
        return self.value


CORNER_PAIRS: tuple[tuple[Corner, Corner], ...] = tuple(
    (s, e) for s in Corner for e in Corner if s is not e
)


@dataclass(frozen=True)
class Decoration:
    start: Corner
    end: Corner

    def __post_init__(self) -> None:
        if self.start is self.end:
            raise ValueError("decoration endpoints must be distinct corners")

    def reversed(self) -> Decoration:
        return Decoration(self.end, self.start)

    def points(self, width, height) -> tuple[Point2, Point2]:
        return self.start.resolve(width, height), self.end.resolve(width, height)

    def __str__(self) -> str:
        return f"{self.start}->{self.end}"


# Reference endpoint table.  Reproduced by solver.solve_decorations() from the
# substitution rule alone; tests keep the two in agreement.
_REFERENCE = {
    "A1+": (Corner.BL, Corner.BR),
    "A2+": (Corner.BR, Corner.TR),
    "A3+": (Corner.TR, Corner.TL),
    "A4+": (Corner.TL, Corner.BL),
    "B1+": (Corner.BL, Corner.TR),
    "B2+": (Corner.BR, Corner.TL),
    "C1+": (Corner.BR, Corner.TL),
    "C2+": (Corner.BL, Corner.TR),
    "D1+": (Corner.BL, Corner.BR),
    "D2+": (Corner.BR, Corner.TR),
    "D3+": (Corner.TR, Corner.TL),
    "D4+": (Corner.TL, Corner.BL),
}
REFERENCE_DECORATIONS: dict[Label, Decoration] = {
    Label.parse(k): Decoration(*v) for k, v in _REFERENCE.items()
}


@lru_cache(maxsize=None)
def decoration_endpoints(label: Label) -> Decoration:
    dec = REFERENCE_DECORATIONS[label.base]
    return dec if label.sign > 0 else dec.reversed()


def decoration_points(label: Label) -> tuple[Point2, Point2]:
    """Exact start and end points of the decoration on the untranslated tile."""
    return decoration_endpoints(label).points(label.width, label.height)
