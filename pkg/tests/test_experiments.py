"""Tests for the experiment drivers and report plumbing."""

import json
import math

import pytest

from pentatrope.config import Settings
from pentatrope.experiments import (
    CHECKS,
    ExperimentReport,
    append_reports,
    run_conjugacy,
    run_conservation,
    run_geometry_equivalence,
    run_interpolation_bound,
    run_polytope_rank,
    run_quasiperiod_bound,
    run_shift_periodicity,
    run_sign_conjugacy,
    run_tropical_conservation,
    trial_nprng,
    trial_rng,
)
from pentatrope.invariants import SignConvention
from pentatrope.semiring import p_number


class TestReportPlumbing:
    def test_json_dict_uses_pass_key(self):
        rep = ExperimentReport(
            name="x",
            parameters={"n": 5},
            samples=3,
            max_observed=0.5,
            bound=1.0,
            passed=True,
            seed=0,
            runtime_ms=12.5,
            details={},
        )
        d = rep.to_json_dict()
        assert d["pass"] is True
        assert "passed" not in d

    def test_digest_ignores_runtime(self):
        kw = dict(
            name="x", parameters={"n": 5}, samples=3, max_observed=0.5,
            bound=1.0, passed=True, seed=0, details={"k": [1, 2]},
        )
        a = ExperimentReport(runtime_ms=1.0, **kw)
        b = ExperimentReport(runtime_ms=999.0, **kw)
        assert a.digest() == b.digest()
        c = ExperimentReport(runtime_ms=1.0, **{**kw, "seed": 1})
        assert a.digest() != c.digest()

    def test_append_reports_accumulates(self, tmp_path):
        path = tmp_path / "report.json"
        rep = run_sign_conjugacy(n_values=(5,), trials=3)
        append_reports([rep], path)
        append_reports([rep], path)
        data = json.loads(path.read_text())
        assert isinstance(data, list) and len(data) == 2
        assert data[0]["name"] == "sign-conjugacy"

    def test_trial_rngs_are_deterministic(self):
        a = trial_rng("alpha", 7, 3)
        b = trial_rng("alpha", 7, 3)
        assert [a.random() for _ in range(5)] == [b.random() for _ in range(5)]
        assert trial_rng("alpha", 7, 4).random() != trial_rng("alpha", 7, 3).random()
        na = trial_nprng("alpha", 7, 3)
        nb = trial_nprng("alpha", 7, 3)
        assert list(na.integers(0, 100, 5)) == list(nb.integers(0, 100, 5))

    def test_reruns_reproduce_digests(self):
        a = run_sign_conjugacy(n_values=(5, 6), trials=4, seed=2)
        b = run_sign_conjugacy(n_values=(5, 6), trials=4, seed=2)
        assert a.digest() == b.digest()


class TestDrivers:
    def test_shift_periodicity_small(self):
        rep = run_shift_periodicity(n_values=(5,), trials=25)
        assert rep.passed and rep.max_observed == 0

    def test_quasiperiod_bound_small(self):
        rep = run_quasiperiod_bound(n=5, t_values=(2,), trials=10)
        assert rep.passed
        # stated bound: natural-log window ln(4) * (5^5 - 1)/4
        assert rep.parameters["k"] == 5
        assert rep.bound == pytest.approx(math.log(4) * p_number(5, 5))
        assert rep.details["t_uniform_ratio_max"] <= 1.0

    def test_interpolation_bound_small(self):
        rep = run_interpolation_bound(n=5, l_max=6, t_values=(2, 10), trials=25)
        assert rep.passed
        assert rep.details["violations"] == 0
        assert rep.max_observed <= 1.0

    def test_conjugacy_small(self):
        rep = run_conjugacy(n_values=(5, 6), l_max=6, trials=20)
        assert rep.passed and rep.max_observed <= 1e-9

    def test_conjugacy_fails_with_impossible_tolerance(self):
        rep = run_conjugacy(n_values=(5,), l_max=6, trials=5, rel_tol=1e-30)
        assert not rep.passed  # honest failure reporting

    def test_conservation_small(self):
        rep = run_conservation(n_values=(5,), trials=10, steps=5)
        assert rep.passed
        assert rep.details["conventions"]["5"] == "O signed, E signed"

    def test_conservation_with_configured_convention(self):
        settings = Settings(sign_convention=SignConvention(True, True))
        rep = run_conservation(n_values=(5,), trials=5, steps=5, settings=settings)
        assert rep.passed

    def test_conservation_wrong_convention_fails_loudly(self):
        settings = Settings(sign_convention=SignConvention(False, False))
        rep = run_conservation(n_values=(5,), trials=5, steps=5, settings=settings)
        assert not rep.passed
        assert rep.max_observed > rep.bound

    def test_tropical_conservation_small(self):
        rep = run_tropical_conservation(n_values=(5,), trials=40)
        assert rep.passed and rep.max_observed == 0
        assert rep.details["generic_fraction"] >= 0.8

    def test_polytope_rank_small(self):
        rep = run_polytope_rank(n_values=(5,), trials=40)
        assert rep.passed
        stats = rep.details["per_n"]["5"]
        assert stats["expected_rank"] == 6 and stats["dimension"] == 4

    def test_geometry_equivalence_small(self):
        rep = run_geometry_equivalence(n_values=(5,), trials=10)
        assert rep.passed and rep.max_observed <= 1e-7

    def test_sign_conjugacy_exact(self):
        rep = run_sign_conjugacy(n_values=(5, 6, 7), trials=30)
        assert rep.passed and rep.max_observed == 0.0


class TestCheckRegistry:
    def test_registry_names(self):
        assert set(CHECKS) == {"lemma21", "thm22", "prop33", "thm23", "crosschecks"}

    def test_checks_return_report_lists(self):
        settings = Settings()
        reports = CHECKS["lemma21"](settings, n_values=(5,), seed=0)
        assert len(reports) == 1
        assert reports[0].name == "shift-periodicity"
        assert reports[0].passed
