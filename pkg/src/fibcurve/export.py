"""Approximating polygons, quadrant tessellations and their serializations.

SVG is presentation only: exact coordinates are printed as fixed-precision
floats with the y axis flipped.  JSON keeps every coordinate exact as
``[a, b, den]`` triples meaning ``(a + b*phi) / den``.
"""
from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .curve import partition
from .goldenfield import (
    GoldenRat,
    Point2,
    Rect,
    golden_from_json,
    golden_to_json,
    to_float,
)
from .prototiles import Label, decoration_points
from .substitution import Patch, PlacedTile, supertile

PATCH_SCHEMA = "fibcurve-patch-v1"
POLYLINE_SCHEMA = "fibcurve-polyline-v1"

DEFAULT_PALETTE = {"A": "#e8a33d", "B": "#4f9bd9", "C": "#6cbf6a", "D": "#d9534f"}


# ---------------------------------------------------------------------------
# geometry


@dataclass(frozen=True)
class Polyline:
    points: tuple[Point2, ...]

    def __len__(self) -> int:
        return len(self.points)

    def to_float(self) -> list[tuple[float, float]]:
        return [p.to_float() for p in self.points]

    def simplified(self) -> Polyline:
        """Drop repeated vertices and vertices interior to straight runs."""
        pts: list[Point2] = []
        for p in self.points:
            if pts and pts[-1] == p:
                continue
            if len(pts) >= 2 and _collinear(pts[-2], pts[-1], p):
                pts[-1] = p
            else:
                pts.append(p)
        return Polyline(tuple(pts))


def _collinear(a: Point2, b: Point2, c: Point2) -> bool:
    cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return GoldenRat.coerce(cross).sign() == 0


def polygon(k: int) -> Polyline:
    """The k-th approximating polygon: centres of the level-k rectangles."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return Polyline(tuple(r.center() for r in partition(k).rects))


def centres(patch: Patch) -> Polyline:
    return Polyline(tuple(t.rect.center() for t in patch.tiles))


def tessellate(m: int) -> Patch:
    """``omega**(2m)(A1+)`` unscaled; A1+ stays at the origin for every m."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return supertile(Label.parse("A1+"), 2 * m)


# Mirror maps (x, y) -> image, as functions on exact coordinates.
REFLECTIONS = {
    "x=0": lambda x, y: (-x, y),
    "y=0": lambda x, y: (x, -y),
    "x=-y": lambda x, y: (-y, -x),
}


@dataclass(frozen=True)
class MirroredTile:
    source: Label
    rect: Rect
    start: Point2
    end: Point2


def _mirror_point(line: str, p: Point2) -> Point2:
    return Point2(*REFLECTIONS[line](p.x, p.y))


def mirror(patch: Patch, line: str) -> tuple[MirroredTile, ...]:
    """A copy of ``patch`` reflected across ``line`` (one of REFLECTIONS)."""
    out = []
    for tile in patch.tiles:
        r = tile.rect
        a = _mirror_point(line, Point2(r.x0, r.y0))
        b = _mirror_point(line, Point2(r.x1, r.y1))
        lo = Point2(min(a.x, b.x), min(a.y, b.y))
        hi = Point2(max(a.x, b.x), max(a.y, b.y))
        s, e = decoration_points(tile.label)
        out.append(
            MirroredTile(
                tile.label,
                Rect(lo, hi.x - lo.x, hi.y - lo.y),
                _mirror_point(line, s + tile.translation),
                _mirror_point(line, e + tile.translation),
            )
        )
    return tuple(out)


def reflections(patch: Patch) -> dict[str, tuple[MirroredTile, ...]]:
    return {line: mirror(patch, line) for line in REFLECTIONS}


# ---------------------------------------------------------------------------
# SVG


def palette_from_env(env: dict | None = None) -> dict[str, str]:
    """Palette with ``FIBCURVE_COLORS`` overrides, e.g. ``A=#fff,D=navy``."""
    env = os.environ if env is None else env
    pal = dict(DEFAULT_PALETTE)
    text = env.get("FIBCURVE_COLORS", "").strip()
    if not text:
        return pal
    for item in text.split(","):
        key, sep, value = item.partition("=")
        key = key.strip().upper()
        if not sep or key not in pal or not value.strip():
            raise ValueError(f"bad FIBCURVE_COLORS entry {item!r}")
        pal[key] = value.strip()
    return pal


@dataclass(frozen=True)
class Style:
    size: float = 512.0  # pixels along the longer side
    margin: float = 8.0
    precision: int = 12
    palette: dict = field(default_factory=lambda: dict(DEFAULT_PALETTE))
    tile_stroke: str = "#333333"
    curve_stroke: str = "#000000"
    curve_width: float = 2.0
    decorations: bool = True
    labels: bool = False


class _Canvas:
    def __init__(self, bounds: tuple[float, float, float, float], style: Style):
        x0, y0, x1, y1 = bounds
        self.x0, self.y1 = x0, y1
        extent = max(x1 - x0, y1 - y0) or 1.0
        self.s = style.size / extent
        self.style = style
        self.width = (x1 - x0) * self.s + 2 * style.margin
        self.height = (y1 - y0) * self.s + 2 * style.margin

    def num(self, v: float) -> str:
        text = f"{v:.{self.style.precision}f}"
        return f"{0.0:.{self.style.precision}f}" if float(text) == 0.0 else text

    def xy(self, x: float, y: float) -> tuple[str, str]:
        m = self.style.margin
        return self.num((x - self.x0) * self.s + m), self.num((self.y1 - y) * self.s + m)


def _bounds(rects: Iterable[Rect], points: Iterable[Point2] = ()) -> tuple[float, ...]:
    xs, ys = [], []
    for r in rects:
        x0, y0, x1, y1 = r.to_float()
        xs += [x0, x1]
        ys += [y0, y1]
    for p in points:
        x, y = p.to_float()
        xs.append(x)
        ys.append(y)
    return min(xs), min(ys), max(xs), max(ys)


def _rect_svg(c: _Canvas, rect: Rect, fill: str) -> str:
    x0, y0, x1, y1 = rect.to_float()
    px, py = c.xy(x0, y1)
    return (
        f'<rect x="{px}" y="{py}" width="{c.num((x1 - x0) * c.s)}" '
        f'height="{c.num((y1 - y0) * c.s)}" fill="{fill}" '
        f'stroke="{c.style.tile_stroke}" stroke-width="1"/>'
    )


def _segment_svg(c: _Canvas, a: Point2, b: Point2) -> str:
    ax, ay = c.xy(*a.to_float())
    bx, by = c.xy(*b.to_float())
    return (
        f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
        f'stroke="{c.style.curve_stroke}" stroke-width="1"/>'
    )


def _polyline_svg(c: _Canvas, line: Polyline) -> str:
    pts = " ".join(",".join(c.xy(*p.to_float())) for p in line.points)
    return (
        f'<polyline points="{pts}" fill="none" stroke="{c.style.curve_stroke}" '
        f'stroke-width="{c.num(c.style.curve_width)}" stroke-linejoin="round"/>'
    )


def to_svg(
    patch: Patch | None = None,
    polyline: Polyline | None = None,
    style: Style | None = None,
    mirrored: Sequence[MirroredTile] = (),
    frame: Rect | None = None,
) -> str:
    """Render tiles (with decorations), mirrored copies and/or a polyline."""
    style = style or Style()
    if patch is None and polyline is None and frame is None:
        raise ValueError("nothing to draw")
    rects = [t.rect for t in patch.tiles] if patch is not None else []
    rects += [m.rect for m in mirrored]
    if frame is not None:
        rects.append(frame)
    points = polyline.points if polyline is not None else ()
    c = _Canvas(_bounds(rects, points), style)
    body = []
    if frame is not None:
        body.append(_rect_svg(c, frame, "none"))
    if patch is not None:
        for t in patch.tiles:
            body.append(_rect_svg(c, t.rect, style.palette[t.label.color.value]))
        if style.decorations:
            for t in patch.tiles:
                s, e = decoration_points(t.label)
                body.append(_segment_svg(c, s + t.translation, e + t.translation))
        if style.labels:
            for t in patch.tiles:
                x, y = c.xy(*t.rect.center().to_float())
                body.append(
                    f'<text x="{x}" y="{y}" font-size="10" text-anchor="middle">{t.label}</text>'
                )
    for m in mirrored:
        body.append(_rect_svg(c, m.rect, style.palette[m.source.color.value]))
        if style.decorations:
            body.append(_segment_svg(c, m.start, m.end))
    if polyline is not None and len(polyline.points) > 1:
        body.append(_polyline_svg(c, polyline))
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{c.num(c.width)}" height="{c.num(c.height)}" '
        f'viewBox="0 0 {c.num(c.width)} {c.num(c.height)}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


# ---------------------------------------------------------------------------
# JSON and CSV


def _pt_json(p: Point2) -> list:
    return [golden_to_json(p.x), golden_to_json(p.y)]


def _pt_from_json(data) -> Point2:
    return Point2(golden_from_json(data[0]), golden_from_json(data[1]))


def patch_to_dict(patch: Patch, decorations: bool = True) -> dict:
    tiles = []
    for t in patch.tiles:
        entry = {
            "label": str(t.label),
            "translation": _pt_json(t.translation),
            "width": golden_to_json(t.label.width),
            "height": golden_to_json(t.label.height),
        }
        if decorations:
            s, e = decoration_points(t.label)
            entry["decoration"] = [_pt_json(s + t.translation), _pt_json(e + t.translation)]
        tiles.append(entry)
    sup = patch.support
    return {
        "schema": PATCH_SCHEMA,
        "seed": None if patch.seed is None else str(patch.seed),
        "level": patch.level,
        "bbox": {
            "origin": _pt_json(sup.origin),
            "width": golden_to_json(sup.width),
            "height": golden_to_json(sup.height),
        },
        "tiles": tiles,
    }


def to_json(obj: Patch | Polyline, decorations: bool = True) -> str:
    if isinstance(obj, Polyline):
        doc = {"schema": POLYLINE_SCHEMA, "points": [_pt_json(p) for p in obj.points]}
    else:
        doc = patch_to_dict(obj, decorations)
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def from_json(text: str) -> Patch | Polyline:
    doc = json.loads(text)
    schema = doc.get("schema")
    if schema == POLYLINE_SCHEMA:
        return Polyline(tuple(_pt_from_json(p) for p in doc["points"]))
    if schema != PATCH_SCHEMA:
        raise ValueError(f"unknown schema {schema!r}")
    tiles = []
    for entry in doc["tiles"]:
        label = Label.parse(entry["label"])
        if golden_from_json(entry["width"]) != label.width or golden_from_json(
            entry["height"]
        ) != label.height:
            raise ValueError(f"tile {label} has the wrong size")
        tiles.append(PlacedTile(label, _pt_from_json(entry["translation"])))
    box = doc["bbox"]
    support = Rect(
        _pt_from_json(box["origin"]), golden_from_json(box["width"]), golden_from_json(box["height"])
    )
    seed = doc.get("seed")
    return Patch(tuple(tiles), support, doc.get("level", 0), seed and Label.parse(seed))


def to_csv(line: Polyline, precision: int = 12) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "x", "y"])
    for i, p in enumerate(line.points, 1):
        w.writerow([i, f"{to_float(p.x):.{precision}f}", f"{to_float(p.y):.{precision}f}"])
    return buf.getvalue()
