import pytest
from hypothesis import given, settings, strategies as st

from fibcurve.prototiles import ALL_LABELS, Color, Corner, Decoration, Label
from fibcurve.solver import (
    DecorationSystem,
    diagnose_printed_rows,
    induced_order,
    omega_as_types,
    problem_from_rule,
    reference_system,
    resolved_words,
    solve_decorations,
    system_orbits,
    transform_system,
    uniqueness_search,
    verify_concatenation,
)
from fibcurve.substitution import printed_rule, rule_omega, supertile


def _free_problem():
    return problem_from_rule(printed_rule(), free_d_indices=True)


def test_corrected_rule_has_exactly_the_reference_system():
    systems = solve_decorations(problem_from_rule(rule_omega()))
    assert len(systems) == 1
    assert systems[0].as_dict() == reference_system().as_dict()


def test_printed_rows_have_no_system():
    assert solve_decorations(problem_from_rule(printed_rule())) == []


def test_free_indices_recover_the_corrections():
    problem = _free_problem()
    systems = solve_decorations(problem)
    assert len(systems) == 1
    assert systems[0].as_dict() == reference_system().as_dict()
    words = resolved_words(problem, systems[0])
    assert words == {k: v for k, v in rule_omega().as_words().items() if k.endswith("+")}
    assert words["A1+"][2] == "D4+" and words["A2+"][3] == "D3-"


@settings(max_examples=25)
@given(st.integers(min_value=0, max_value=10**9))
def test_solution_set_does_not_depend_on_variable_order(seed):
    assert solve_decorations(_free_problem(), seed=seed) == solve_decorations(_free_problem())


@settings(max_examples=10)
@given(st.integers(min_value=0, max_value=10**9))
def test_printed_rows_fail_under_any_order(seed):
    assert solve_decorations(problem_from_rule(printed_rule()), seed=seed) == []


def test_diagnostic_summary():
    diag = diagnose_printed_rows()
    assert (len(diag.corrected), len(diag.printed), len(diag.free)) == (1, 0, 1)


@pytest.mark.parametrize("seed", ALL_LABELS, ids=str)
def test_concatenation_small_levels(seed):
    for k in range(5):
        report = verify_concatenation(supertile(seed, k))
        assert report.ok, report.violation


def test_concatenation_detects_a_wrong_decoration():
    decs = dict(reference_system().decorations)
    decs[Label.parse("B1+")] = Decoration(Corner.BR, Corner.TL)
    broken = DecorationSystem(tuple(decs.items()))
    report = verify_concatenation(supertile(Label.parse("A1+"), 3), broken)
    assert not report.ok and report.violation


def test_printed_rule_breaks_concatenation():
    patch = supertile(Label.parse("A1+"), 1, printed_rule())
    assert not verify_concatenation(patch).ok


def test_induced_order_is_the_tile_order():
    patch = supertile(Label.parse("C2-"), 4)
    check = induced_order(patch)
    assert check.ok and check.order == patch.labels()


def test_wide_search_finds_one_orbit_equal_to_omega():
    results = uniqueness_search(depth=5)
    omega = omega_as_types()
    connected = []
    for seed, res in results.items():
        diagonal = {seed[1], seed[2]} in ({Corner.BL, Corner.TR}, {Corner.BR, Corner.TL})
        assert len(res.connected) == (0 if diagonal else 1)
        connected.extend(res.connected)
    assert all(omega[t] == chain for s in connected for t, chain in s.items())
    assert len(system_orbits(connected)) == 1


def test_transforms_are_involutions():
    omega = omega_as_types()
    for transpose in (False, True):
        for reverse in (False, True):
            twice = transform_system(transform_system(omega, transpose, reverse), transpose, reverse)
            assert twice == omega
    assert {t[0] for t in omega} == set(Color)
