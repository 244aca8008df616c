"""Smoke tests for the python module."""

from fractions import Fraction as F

import pytest

import ndtopt


def test_binomial():
    assert ndtopt.binomial(4, 2) == 6
    assert ndtopt.binomial(2, 3) == 0


def test_feasibility():
    assert ndtopt.feasible(3, 3, 3, 0, F(1, 3))
    assert not ndtopt.feasible(3, 3, 3, 0, "1/4")


def test_index_set():
    states = ndtopt.index_set(2, 2, 2)
    assert states == [(0, 1), (0, 2), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]


def test_dof_fixtures():
    assert ndtopt.per_user_dof(3, 3, 3, 0, 2) == F(6, 7)
    assert ndtopt.per_user_dof(3, 3, 3, 0, 1) == F(3, 5)
    assert ndtopt.sum_dof(3, 3, 3, 1, 2) == F(3, 2)


def test_ndt_upper_returns_exact_fractions():
    tau, ratios = ndtopt.ndt_upper(3, 3, 3, 0, F(1, 3))
    assert tau == F(5, 3)
    assert ratios == {(0, 1): F(1, 3)}

    tau22, _ = ndtopt.ndt_upper(2, 2, 2, "1/2", "1/2")
    assert tau22 == F(1, 2)


def test_lower_bounds():
    tau, argmax = ndtopt.ndt_lower_coded(3, 3, 3, 0, F(1, 3))
    assert tau == F(5, 3)
    assert argmax == (1, 1, 2)
    tau2, _ = ndtopt.ndt_lower_uncoded(3, 3, 3, F(1, 4), F(1, 4))
    assert tau2 == F(5, 4)


def test_ndt_from_ratios_matches_both_integer_point_splittings():
    assert ndtopt.ndt_from_ratios(3, 3, 3, {(0, 3): F(2, 3), (3, 0): F(1, 3)}) == F(2, 3)
    assert ndtopt.ndt_from_ratios(3, 3, 3, {"1,2": "1/9"}) == F(2, 3)


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        ndtopt.ndt_upper(3, 3, 3, 0.1, 0.5)


def test_compute_report_schema():
    report = ndtopt.compute(3, 3, 3, 0, "1/3")
    assert report["tau_upper"]["exact"] == "5/3"
    assert report["gap"]["exact"] == "1"
    assert report["optimality"]["case"] == 3
    assert report["lower_coded_argmax"] == {"l": 1, "s1": 1, "s2": 2}


def test_regions():
    assert ndtopt.classify_region(3, 3, 0, "1/2") == 4
    assert ndtopt.closed_form(3, 3, 0, "1/2") == F(17, 12)
    ratios = ndtopt.optimal_ratios(3, 3, 0, "1/2")
    assert ratios == {(0, 1): F(1, 6), (0, 2): F(1, 6)}


def test_validate_split():
    assert ndtopt.validate_split(3, 3, 3, "1/3", "2/3", {(1, 2): "1/9"}) == []
    violations = ndtopt.validate_split(2, 2, 2, "0", "1/2", {(0, 1): "1/4"})
    assert violations and violations[0][0] == "total"
    assert violations[0][2] == F(1, 2)


def test_simulate_round_trip():
    result = ndtopt.simulate(3, 3, 3, "1/3", "2/3", {(1, 2): "1/9"}, seed=9)
    assert result["all_decoded"]
    assert result["total_ndt"]["exact"] == "2/3"
    assert result["file_bits"] == 9


def test_verify_scheme():
    check = ndtopt.verify_scheme(3, 3, 1, 2, scheme="neutralize", seed=5)
    assert check["neutralization_ok"]
    assert check["decode_ok"]
    assert check["finite_dof"]["exact"] == "1"

    aligned = ndtopt.verify_scheme(3, 3, 0, 2, n=1, scheme="align", seed=5)
    assert aligned["slots"] == 70
    assert aligned["desired_per_receiver"] == 6
    assert aligned["alignment_ok"]
    assert aligned["limit_dof"]["exact"] == "6/7"


def test_solve_lp():
    sol = ndtopt.solve_lp(["1"], [], [(["-1"], "-1")], [("0", "10")])
    assert sol["status"] == "optimal"
    assert sol["value"] == F(1)
    infeasible = ndtopt.solve_lp(["1"], [], [(["-1"], "-2"), (["1"], "1")], [("0", "10")])
    assert infeasible["status"] == "infeasible"
