"""Acceptance gate: the eight quantitative claims the package certifies.

Each test runs one verification driver at its full published parameters,
prints a single pass/fail line, and asserts both the bound and the runtime
budget.  Tolerances here are pinned on purpose -- loosening them is a change
of contract, not a fix.
"""

import math

import pytest

from pentatrope.experiments import (
    run_conjugacy,
    run_conservation,
    run_geometry_equivalence,
    run_interpolation_bound,
    run_polytope_rank,
    run_quasiperiod_bound,
    run_shift_periodicity,
    run_tropical_conservation,
)
from pentatrope.semiring import p_number


def announce(num, label, rep, budget_s):
    status = "PASS" if rep.passed else "FAIL"
    print(
        f"ACCEPTANCE {num}: {status} - {label} "
        f"(observed {rep.max_observed:.6g} vs bound {rep.bound:.6g}, "
        f"{rep.samples} samples, {rep.runtime_ms:.0f} ms)"
    )
    assert rep.passed, f"criterion {num} failed: {label}: {rep.details}"
    assert rep.runtime_ms < budget_s * 1000, (
        f"criterion {num} exceeded its {budget_s} s budget: {rep.runtime_ms} ms"
    )


def test_criterion_1_exact_shift_periodicity():
    # 1000 rational polytope points for each n in {5,6,7}: the automaton is a
    # pure cyclic shift, identity after n steps, zero tolerance, < 5 s
    rep = run_shift_periodicity(n_values=(5, 6, 7), trials=1000, seed=0)
    assert rep.samples == 3000
    assert rep.max_observed == 0 and rep.bound == 0
    announce(1, "exact shift periodicity on the polytope", rep, 5.0)


def test_criterion_2_quasiperiod_bound():
    # n=5, k=5, t in {2,4,10}, 200 trials: |ln ratio| <= ln(4) * (5^5-1)/4,
    # and the t-uniform form |log_t ratio| <= p(5,5) * log_t 4 per trial, < 30 s
    rep = run_quasiperiod_bound(n=5, t_values=(2, 4, 10), trials=200, seed=0)
    assert rep.parameters["k"] == 5
    assert rep.bound == pytest.approx(math.log(4) * p_number(5, 5))
    assert rep.max_observed <= rep.bound
    assert rep.details["t_uniform_ratio_max"] <= 1.0
    announce(2, "quasi-period multiplicative window", rep, 30.0)


def test_criterion_3_interpolation_bound():
    # n=5, l <= 12, t in {2,10,100}, 500 trials: componentwise deviation
    # <= p_number(l,5) * log_t 4 with zero violations, < 20 s
    rep = run_interpolation_bound(
        n=5, l_max=12, t_values=(2, 10, 100), trials=500, seed=0
    )
    assert rep.details["violations"] == 0
    assert rep.max_observed <= 1.0
    announce(3, "iterated interpolation gap bound", rep, 20.0)


def test_criterion_4_log_conjugacy():
    # log_t(F^l(t^x, t^y)) == phi_t^l(x, y) to relative 1e-9; l <= 10, t=2,
    # 200 trials, sup-norm <= 5 initial data, < 10 s
    rep = run_conjugacy(
        n_values=(5, 6, 7), l_max=10, t=2.0, trials=200, sup_norm=5.0,
        seed=0, rel_tol=1e-9,
    )
    assert rep.bound == 1e-9
    announce(4, "log-domain conjugacy of the two routes", rep, 10.0)


def test_criterion_5_elementary_conservation():
    # with the orbit-oracle-selected sign convention, all O_k and E_k
    # (k <= floor(n/2) and k=n) drift <= 1e-8 relative over 10 steps,
    # 50 orbits for each n in {5..8}, < 30 s.  A ConventionError surfaces as
    # passed=False with a diagnostic in details -- a loud, honest failure.
    rep = run_conservation(n_values=(5, 6, 7, 8), trials=50, steps=10, seed=0)
    assert rep.bound == 1e-8
    assert "error" not in rep.details, rep.details
    assert set(rep.details["conventions"]) == {"5", "6", "7", "8"}
    announce(5, "conserved families under the signed map", rep, 30.0)


def test_criterion_6_tropical_conservation():
    # exact integer conservation of both coordinate sums and every triple
    # family max along 30-step orbits, 200 trials for n in {5,6,7}; the
    # exchanged family's class-max must be conserved on the generic subset,
    # with >= 80% of trials generic, < 20 s
    rep = run_tropical_conservation(n_values=(5, 6, 7), trials=200, steps=30, seed=0)
    assert rep.max_observed == 0
    assert rep.details["exchanged_family_violations"] == 0
    assert rep.details["generic_fraction"] >= 0.8
    announce(6, "exact max-plus conservation laws", rep, 20.0)


def test_criterion_7_level_set_rank():
    # generic invariant-gradient rank equals 2*floor(n/2)+2 at >= 95% of
    # sampled generic orbit points for n in {5,6,7} (exact rational rank,
    # no tolerance), giving level-set dimensions 4, 4, 6; < 30 s
    rep = run_polytope_rank(n_values=(5, 6, 7), trials=200, seed=0)
    per_n = rep.details["per_n"]
    assert [per_n[str(n)]["expected_rank"] for n in (5, 6, 7)] == [6, 8, 8]
    assert [per_n[str(n)]["dimension"] for n in (5, 6, 7)] == [4, 4, 6]
    for n in (5, 6, 7):
        assert per_n[str(n)]["rank_match_rate"] >= 0.95
    announce(7, "conserved-gradient rank and level-set dimension", rep, 30.0)


def test_criterion_8_geometry_oracle():
    # the diagonal-intersection construction and the coordinate map commute
    # with the cross-ratio chart to relative 1e-7 on 100 random convex
    # n-gons for each n in {5..8}, < 20 s
    rep = run_geometry_equivalence(n_values=(5, 6, 7, 8), trials=100, seed=0, rel_tol=1e-7)
    assert rep.bound == 1e-7
    assert rep.samples == 400
    announce(8, "geometric construction matches the coordinate map", rep, 20.0)
