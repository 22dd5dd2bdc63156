"""Acceptance criteria 1-10 at their stated tolerances.

Each criterion records one summary line; conftest prints them after the run.
"""
from __future__ import annotations

import pytest

from zetalab import suite

# the literal tolerances of each check, independent of the configurable table
LITERAL = {
    "toy.closed_form": 1e-6,
    "toy.independence": 1e-6,
    "lfunc.functional_equation": 1e-8,
    "lfunc.central_zero": 1e-8,
    "lfunc.route_equivalence": 1e-8,
    "hasse.laurent_stability": 1e-6,
    "boundary.identity": 1e-4,
    "boundary.symmetry": 1e-7,
    "boundary.reality": 1e-8,
    "meanper.commutativity": 1e-9,
    "meanper.associativity": 1e-9,
    "meanper.multiplicativity": 1e-8,
    "meanper.eigenfunction": 1e-8,
}

SUMMARY: dict[int, str] = {}


def _record(k, reports):
    ok = all(r.passed for r in reports)
    worst = ", ".join(f"{r.check}={r.rel_err:.2e}/{r.tol:.0e}" for r in reports)
    SUMMARY[k] = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  ({worst})"
    print(SUMMARY[k])


@pytest.fixture(scope="module")
def reports(ws11):
    cache: dict[int, list] = {}

    def get(k):
        if k not in cache:
            cache[k] = suite.run_criterion(k, ws11.curve, dict(suite.TOLERANCES), ws11)
            _record(k, cache[k])
        return {r.check: r for r in cache[k]}
    return get


def _assert_literal(rep):
    if rep.check in LITERAL:
        assert rep.tol == LITERAL[rep.check], rep.check
    assert rep.passed, rep.line()


def test_tolerance_table_matches_criteria():
    for name, tol in LITERAL.items():
        assert suite.TOLERANCES[name] == tol
    assert suite.TOLERANCES["boundary.compare_routes"] == 5e-2
    assert suite.TOLERANCES["meanper.annihilation.grid"] == 1e-3
    assert suite.TOLERANCES["meanper.annihilation.mellin"] == 1e-6
    assert suite.TOLERANCES["hasse.cancellation"] == 1e-3


def test_criterion_1_toy_exactness(reports):
    reps = reports(1)
    assert set(reps) == {"toy.closed_form", "toy.independence"}
    assert [complex(s) for s in reps["toy.closed_form"].params["s"]] == [3, 2 + 2j]
    for rep in reps.values():
        _assert_literal(rep)


def test_criterion_2_functional_equation(reports):
    reps = reports(2)
    assert reps["lfunc.functional_equation"].params["curves"] == ["11a1", "37a1"]
    for rep in reps.values():
        _assert_literal(rep)
    assert reps["lfunc.central_zero"].params["curve"] == "37a1"


def test_criterion_2_covers_both_curves(reports):
    rep = reports(2)["lfunc.functional_equation"]
    assert rep.params["points"] == 50
    assert set(rep.data["worst_by_curve"]) == {"11a1", "37a1"}


def test_criterion_3_route_equivalence(reports):
    rep = reports(3)["lfunc.route_equivalence"]
    assert min(complex(s).real for s in rep.params["s"]) >= 2.5
    _assert_literal(rep)


def test_criterion_4_pole_structure(reports):
    reps = reports(4)
    data = reps["hasse.pole_orders"].data
    assert reps["hasse.pole_orders"].rel_err == 0
    assert [e["order"] for e in data["expected"]] == [4, 4, 2]
    assert data["found"] == data["expected"]
    for rep in reps.values():
        _assert_literal(rep)


def test_criterion_5_boundary_identity(reports):
    rep = reports(5)["boundary.identity"]
    assert len(rep.params["s"]) == 2
    _assert_literal(rep)


def test_criterion_6_two_routes(reports):
    rep = reports(6)["boundary.compare_routes"]
    assert rep.params["route_tol"] == 5e-2 and rep.params["t_max"] == 40
    assert rep.data["monotone"]
    assert rep.data["route_error"] <= 5e-2
    assert rep.passed


def test_criterion_7_symmetry(reports):
    reps = reports(7)
    assert reps["boundary.symmetry"].params["points"] == 100
    for rep in reps.values():
        _assert_literal(rep)


def test_criterion_8_annihilation(reports):
    reps = reports(8)
    mellin, grid = reps["meanper.annihilation.mellin"], reps["meanper.annihilation.grid"]
    assert mellin.params["order_tol"] == 1e-6
    assert all(o["found"] >= o["required"] for o in mellin.data["orders"])
    assert grid.params["grid_tol"] == 1e-3
    assert grid.data["improving"]
    assert mellin.passed and grid.passed


@pytest.mark.xfail(strict=True, reason="w0 alone already meets the 1e-3 grid bound under the "
                                       "sup|w| sup|h| normalization; only the Mellin verdict "
                                       "rejects it")
def test_criterion_8_negative_control(reports):
    rep = reports(8)["meanper.annihilation.negative_control"]
    assert not rep.data["mellin_pass"]
    assert rep.passed, rep.line()


def test_criterion_9_algebra(reports):
    for rep in reports(9).values():
        _assert_literal(rep)


def test_criterion_10_cancellation(reports):
    rep = reports(10)["hasse.cancellation"]
    assert rep.params["t_max"] == 15 and rep.data["coincidences"] == []
    # rel_err = threshold / minimum distance
    assert rep.params["threshold"] / rep.rel_err > 1e-3
    assert any("Re s = 1" in n for n in rep.notes)
    assert rep.passed
