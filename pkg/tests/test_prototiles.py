import pytest

from fibcurve.goldenfield import ONE, PHI, Point2, ZERO
from fibcurve.prototiles import (
    ALL_LABELS,
    BASE_LABELS,
    Color,
    Corner,
    Label,
    REFERENCE_DECORATIONS,
    decoration_endpoints,
    decoration_points,
    prototile_set,
)


def test_twenty_four_labels_in_order():
    names = [str(lab) for lab in ALL_LABELS]
    assert names[:12] == ["A1+", "A2+", "A3+", "A4+", "B1+", "B2+", "C1+", "C2+",
                          "D1+", "D2+", "D3+", "D4+"]
    assert names[12:] == [n[:-1] + "-" for n in names[:12]]
    assert [lab.position for lab in ALL_LABELS] == list(range(1, 25))
    assert len(prototile_set()) == 24


@pytest.mark.parametrize("color,w,h", [("A", PHI, PHI), ("B", PHI, ONE), ("C", ONE, PHI), ("D", ONE, ONE)])
def test_dimensions(color, w, h):
    lab = Label.parse(f"{color}1+")
    assert (lab.width, lab.height) == (w, h)


def test_parse_round_trip_and_errors():
    for lab in ALL_LABELS:
        assert Label.parse(str(lab)) == lab
    assert Label.parse("A1−") == Label(Color.A, 1, -1)
    for bad in ("B3+", "E1+", "A1", "A5-"):
        with pytest.raises(ValueError):
            Label.parse(bad)


@pytest.mark.parametrize("label", ALL_LABELS, ids=str)
def test_minus_reverses_decoration(label):
    d = decoration_endpoints(label)
    r = decoration_endpoints(label.reverse())
    assert (d.start, d.end) == (r.end, r.start)
    s, e = decoration_points(label)
    assert s != e


def test_reference_table_spot_values():
    assert REFERENCE_DECORATIONS[Label.parse("A1+")].start is Corner.BL
    assert REFERENCE_DECORATIONS[Label.parse("A1+")].end is Corner.BR
    assert decoration_points(Label.parse("C1+")) == (Point2(ONE, ZERO), Point2(ZERO, PHI))
    assert len(REFERENCE_DECORATIONS) == len(BASE_LABELS)
