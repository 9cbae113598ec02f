import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fibcurve.goldenfield import PHI, Point2, ZERO, fibonacci, phi_pow
from fibcurve.prototiles import ALL_LABELS, Label
from fibcurve.substitution import (
    CORRECTIONS,
    PHI_SQUARED,
    PRINTED_NU_ROWS,
    ConvergenceError,
    apply,
    count_matrix,
    dominant_eigenvalue,
    label_counts,
    nu_word,
    printed_rule,
    reversal_symmetric,
    rule_from_words,
    rule_mu1,
    rule_omega,
    single,
    subtree_size,
    supertile,
)

DATA = Path(__file__).resolve().parent / "data"
labels = st.sampled_from(ALL_LABELS)


def test_mu1_word_lengths_grow_by_phi():
    mu = rule_mu1()
    word = ["A"]
    for k in range(12):
        nxt = mu.apply(word)
        assert mu.length(nxt) == mu.length(word) * PHI
        assert len(word) == fibonacci(k + 2) if k else len(word) == 1
        word = nxt


@pytest.mark.parametrize("k", range(11))
def test_tile_counts_are_squared_fibonacci(k):
    assert len(supertile(Label.parse("A1+"), k)) == fibonacci(k + 2) ** 2


def test_nu_word_level_two():
    word = [str(lab) for lab in nu_word(Label.parse("A1+"), 2)]
    assert word == ["A1+", "C2+", "D1-", "B2+", "A1+", "C2+", "A4+", "B2-", "A2-"]


def test_level_one_order():
    patch = supertile(Label.parse("A1+"), 1)
    assert [str(t.translation) for t in patch] == ["(0, 0)", "(0, φ)", "(φ, φ)", "(φ, 0)"]
    assert [str(lab) for lab in patch.labels()] == ["A4-", "B1+", "D4+", "C1-"]


def test_corrections_touch_only_two_d_children():
    printed = printed_rule().as_words()
    fixed = rule_omega().as_words()
    diff = [(p, i) for p in printed for i, (a, b) in enumerate(zip(printed[p], fixed[p])) if a != b]
    assert sorted(diff) == sorted(
        [("A1+", 2), ("A2+", 3), ("A1-", 1), ("A2-", 0)]
    )
    assert set(CORRECTIONS) == {("A1+", 2), ("A2+", 3)}


def test_printed_minus_rows_are_reversals():
    assert reversal_symmetric(PRINTED_NU_ROWS) == []


def test_printed_matrix_transcription():
    printed = np.array(json.loads((DATA / "printed_matrix.json").read_text()))
    assert (count_matrix(printed_rule()) == printed).all()


def test_count_matrix_row_sums():
    m = count_matrix()
    sums = {"A": 4, "B": 2, "C": 2, "D": 1}
    for lab in ALL_LABELS:
        assert m[lab.position - 1].sum() == sums[lab.color.value]


def test_power_iteration_matches_numpy():
    m = count_matrix()
    lam, iters = dominant_eigenvalue(m)
    oracle = max(abs(np.linalg.eigvals(m.astype(float))))
    assert abs(lam - PHI_SQUARED) < 1e-9
    assert abs(lam - oracle) < 1e-9
    assert iters < 1000


def test_power_iteration_reports_failure():
    with pytest.raises(ConvergenceError):
        dominant_eigenvalue(np.zeros((3, 3)))
    rotation = np.array([[0.0, -1.0], [1.0, 0.0]])  # no real dominant eigenvalue
    with pytest.raises(ConvergenceError):
        dominant_eigenvalue(rotation, max_iter=50)


@given(labels, st.integers(min_value=0, max_value=6))
def test_supertile_tiles_its_support(seed, k):
    patch = supertile(seed, k)
    total = sum((t.label.area() for t in patch), ZERO)
    assert total == patch.support.area() == seed.area() * phi_pow(2 * k)
    assert all(patch.support.contains_rect(t.rect) for t in patch)
    assert len(patch) == subtree_size(seed, k)


@given(labels, st.integers(min_value=0, max_value=4))
def test_tiles_do_not_overlap(seed, k):
    rects = [t.rect for t in supertile(seed, k)]
    for i, a in enumerate(rects):
        for b in rects[i + 1:]:
            assert not a.interiors_overlap(b)


@given(labels, st.integers(min_value=0, max_value=5))
def test_apply_agrees_with_supertile(seed, k):
    patch = single(seed)
    for _ in range(k):
        patch = apply(patch)
    assert patch.tiles == supertile(seed, k).tiles


@given(labels, st.integers(min_value=0, max_value=8))
def test_label_counts_follow_matrix_powers(seed, k):
    m = count_matrix().astype(object)
    v = np.zeros(24, dtype=object)
    v[seed.position - 1] = 1
    for _ in range(k):
        v = v @ m
    assert (label_counts(nu_word(seed, k)) == v).all()


def test_prefix_invariance_of_even_levels():
    a = Label.parse("A1+")
    for m in range(1, 4):
        small, big = supertile(a, 2 * (m - 1)), supertile(a, 2 * m)
        assert big.tiles[: len(small)] == small.tiles
        assert big.tiles[0].label == a and big.tiles[0].translation == Point2(ZERO, ZERO)


def test_rule_from_words_validates_cells():
    words = dict(rule_omega().as_words())
    words = {k: v for k, v in words.items() if k.endswith("+")}
    words["B1+"] = ("A1+", "D1+")
    with pytest.raises(ValueError):
        rule_from_words(words)


def test_supertile_rejects_negative_level():
    with pytest.raises(ValueError):
        supertile(Label.parse("A1+"), -1)
