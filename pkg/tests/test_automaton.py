"""Tests for the max-plus automaton and its t-interpolant."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pentatrope.automaton import (
    COMPONENT_BOUND,
    LIPSCHITZ_BOUND,
    component_presentation,
    detect_period,
    is_shift_periodic_seed,
    lift_exponential,
    lift_quasiperiodic,
    orbit_phi,
    orbit_phi_t,
    random_shift_periodic_seed,
    shift_orbit_state,
    step_phi,
    step_phi_t,
    sup_distance,
)
from pentatrope import dynamics
from pentatrope.semiring import eval_maxplus, eval_rt, p_number


def reference_phi(x, y):
    """Plain-loop reimplementation of the piecewise-linear step, independent
    of the packaged one."""
    n = len(x)
    hinge = [max(0, x[i] + y[i]) for i in range(n)]
    xp = [x[i] + hinge[(i - 1) % n] - hinge[(i + 1) % n] for i in range(n)]
    yp = [y[(i + 1) % n] + hinge[(i + 2) % n] - hinge[i] for i in range(n)]
    return tuple(xp), tuple(yp)


class TestStepPhi:
    def test_hand_example(self):
        # x = (1,0,0,0,0), y = 0: hinges (1,0,0,0,0).
        # x'_0 = 1+0-0, x'_1 = 0+1-0, x'_4 = 0+0-1;
        # y'_0 = y_1+0-1, y'_3 = y_4+1-0, rest cancel.
        x, y = (1, 0, 0, 0, 0), (0, 0, 0, 0, 0)
        xp, yp = step_phi(x, y)
        assert xp == (1, 1, 0, 0, -1)
        assert yp == (-1, 0, 0, 1, 0)

    @pytest.mark.parametrize("n", [5, 6, 7, 10])
    def test_matches_reference_on_integers(self, n):
        rng = random.Random(600 + n)
        for _ in range(100):
            x = tuple(rng.randint(-20, 20) for _ in range(n))
            y = tuple(rng.randint(-20, 20) for _ in range(n))
            assert step_phi(x, y) == reference_phi(x, y)

    def test_exact_on_fractions(self):
        x = (Fraction(1, 3), Fraction(-1, 2), Fraction(0), Fraction(2, 7), Fraction(1))
        y = (Fraction(1, 6), Fraction(1, 2), Fraction(-3), Fraction(0), Fraction(-1))
        xp, yp = step_phi(x, y)
        assert all(isinstance(v, Fraction) for v in xp + yp)
        assert (xp, yp) == reference_phi(x, y)

    @pytest.mark.parametrize("n", [5, 6, 7])
    def test_coordinate_sums_conserved(self, n):
        rng = random.Random(610 + n)
        for _ in range(50):
            x = tuple(rng.randint(-50, 50) for _ in range(n))
            y = tuple(rng.randint(-50, 50) for _ in range(n))
            xp, yp = step_phi(x, y)
            assert sum(xp) == sum(x)
            assert sum(yp) == sum(y)

    @given(
        st.lists(st.integers(-10**6, 10**6), min_size=10, max_size=18).filter(
            lambda v: len(v) % 2 == 0
        )
    )
    def test_sums_conserved_for_arbitrary_integers(self, entries):
        half = len(entries) // 2
        x, y = tuple(entries[:half]), tuple(entries[half:])
        xp, yp = step_phi(x, y)
        assert sum(xp) == sum(x) and sum(yp) == sum(y)
        assert (xp, yp) == reference_phi(x, y)

    def test_rejects_mismatched_blocks(self):
        with pytest.raises(ValueError):
            step_phi((1, 2, 3, 4, 5), (1, 2, 3))

    def test_rejects_short_state(self):
        with pytest.raises(ValueError):
            step_phi((1, 2), (3, 4))


class TestStepPhiT:
    def test_single_step_gap(self):
        # one step: componentwise gap <= p_number(1,5) * log_t(4) = log_t(4)
        rng = random.Random(620)
        for t in (2.0, 10.0, 100.0):
            allowed = math.log(COMPONENT_BOUND) / math.log(t)
            for _ in range(100):
                n = rng.choice((5, 6, 7))
                x = tuple(rng.uniform(-10, 10) for _ in range(n))
                y = tuple(rng.uniform(-10, 10) for _ in range(n))
                dev = sup_distance(step_phi_t(x, y, t), step_phi(x, y))
                assert dev <= allowed + 1e-12

    def test_matches_log_domain_positive_step(self):
        # the interpolated automaton step and the log-coordinate version of
        # the positive map are the same formula
        rng = random.Random(621)
        for _ in range(50):
            x = tuple(rng.uniform(-5, 5) for _ in range(6))
            y = tuple(rng.uniform(-5, 5) for _ in range(6))
            assert step_phi_t(x, y, 3.0) == dynamics.step_F_log(x, y, 3.0)

    def test_orbit_helpers(self):
        x, y = (1, 0, 0, 0, 0), (0, 0, 0, 0, 0)
        states = orbit_phi(x, y, 3)
        assert len(states) == 4
        assert states[0] == (x, y)
        assert states[1] == step_phi(x, y)
        ts = orbit_phi_t(tuple(map(float, x)), tuple(map(float, y)), 2.0, 3)
        assert len(ts) == 4


class TestComponentPresentations:
    @pytest.mark.parametrize("part", ["x", "y"])
    @pytest.mark.parametrize("n", [5, 6, 8])
    def test_bounds_hold(self, n, part):
        for i in range(n):
            p = component_presentation(n, i, part)
            assert p.arity == 2 * n
            assert p.component_count <= COMPONENT_BOUND
            assert p.lipschitz_constant <= LIPSCHITZ_BOUND

    @pytest.mark.parametrize("n", [5, 7])
    def test_presentations_evaluate_to_the_step(self, n):
        # dual route: the packaged step versus term-by-term max-plus
        # evaluation of each component's presentation
        rng = random.Random(630 + n)
        for _ in range(30):
            x = tuple(rng.randint(-15, 15) for _ in range(n))
            y = tuple(rng.randint(-15, 15) for _ in range(n))
            xp, yp = step_phi(x, y)
            flat = x + y
            for i in range(n):
                assert eval_maxplus(component_presentation(n, i, "x"), flat) == xp[i]
                assert eval_maxplus(component_presentation(n, i, "y"), flat) == yp[i]

    def test_rt_evaluation_matches_interpolated_step(self):
        n, t = 5, 3.0
        rng = random.Random(631)
        x = tuple(rng.uniform(-4, 4) for _ in range(n))
        y = tuple(rng.uniform(-4, 4) for _ in range(n))
        xp, yp = step_phi_t(x, y, t)
        flat = x + y
        for i in range(n):
            assert eval_rt(component_presentation(n, i, "x"), t, flat) == pytest.approx(
                xp[i], rel=1e-10, abs=1e-10
            )
            assert eval_rt(component_presentation(n, i, "y"), t, flat) == pytest.approx(
                yp[i], rel=1e-10, abs=1e-10
            )

    def test_rejects_bad_part(self):
        with pytest.raises(ValueError):
            component_presentation(5, 0, "q")


class TestShiftPolytope:
    def test_membership_is_all_pairs_condition(self):
        rng = random.Random(640)
        for _ in range(200):
            n = rng.choice((5, 6, 7))
            x = tuple(rng.uniform(-2, 1) for _ in range(n))
            y = tuple(rng.uniform(-2, 1) for _ in range(n))
            expected = all(xi + yj <= 0 for xi in x for yj in y)
            assert is_shift_periodic_seed(x, y) == expected

    @pytest.mark.parametrize("n", [5, 6, 7, 9])
    def test_automaton_is_pure_shift_on_polytope(self, n):
        rng = random.Random(641 + n)
        for _ in range(50):
            x, y = random_shift_periodic_seed(rng, n)
            assert is_shift_periodic_seed(x, y)
            cur = (x, y)
            for step in range(1, n + 1):
                cur = step_phi(*cur)
                assert cur == shift_orbit_state(x, y, step)  # exact rationals
            assert cur == (x, y)  # n steps = identity

    def test_shift_state_hand_values(self):
        x, y = (1, 2, 3, 4, 5), (10, 20, 30, 40, 50)
        xs, ys = shift_orbit_state(x, y, 1)
        assert xs == x
        assert ys == (20, 30, 40, 50, 10)
        assert shift_orbit_state(x, y, 5) == (x, y)

    def test_detect_period_on_polytope(self):
        rng = random.Random(642)
        for _ in range(30):
            n = rng.choice((5, 6, 7))
            x, y = random_shift_periodic_seed(rng, n)
            k = detect_period(x, y, k_max=n)
            assert k is not None and n % k == 0  # cyclic shift period divides n

    def test_detect_period_fixed_point(self):
        # constant states balance both hinge terms, so one step is identity
        assert detect_period((5, 5, 5, 5, 5), (5, 5, 5, 5, 5), k_max=3) == 1

    def test_detect_period_none_when_absent(self):
        assert detect_period((3, 1, -2, 0, 4), (1, -1, 2, 0, -3), k_max=20) is None

    def test_detect_period_float_tolerance(self):
        x = (-1.0, -0.5, -2.0, -1.5, -0.25)
        y = (-0.5, -1.0, -0.75, -0.3, -1.25)
        assert max(x) + max(y) <= 0
        assert detect_period(x, y, k_max=5) == 5


class TestLifts:
    def test_exponential_lift_values(self):
        z, w = lift_exponential(2.0, (0, 1, 2, -1, 0), (1, 0, 0, 0, -2))
        assert z == (1.0, 2.0, 4.0, 0.5, 1.0)
        assert w == (2.0, 1.0, 1.0, 1.0, 0.25)

    def test_lift_overflow_guard(self):
        big = (800.0, 0, 0, 0, 0)
        with pytest.raises(OverflowError):
            lift_exponential(math.e, big, (0, 0, 0, 0, 0))

    def test_quasiperiodic_lift_negates_one_block(self):
        x, y = (0.0, 1.0, 0.0, 0.0, 0.0), (0.0, 0.0, 0.0, 0.0, 0.0)
        z, w = lift_quasiperiodic(2.0, x, y, block="w")
        assert all(v > 0 for v in z)
        assert all(v < 0 for v in w)
        # magnitudes agree with the plain lift
        zp, wp = lift_exponential(2.0, x, y)
        assert z == zp
        assert tuple(-v for v in w) == wp

    def test_signed_orbit_of_lift_mirrors_positive_orbit(self):
        # T on the conjugated lift == conjugate of F on the plain lift;
        # in turn F in log coordinates is the interpolated automaton step
        t = 2.0
        x = (0.5, -0.25, 0.0, 0.75, -0.5)
        y = (-1.0, 0.25, -0.5, 0.0, 0.5)
        state = lift_quasiperiodic(t, x, y)
        lhs = dynamics.step_T(*state)
        rhs = dynamics.sign_conjugate(dynamics.step_F(*lift_exponential(t, x, y)))
        assert lhs == rhs


def test_sup_distance():
    a = ((0.0, 1.0), (2.0, 3.0))
    b = ((0.5, 1.0), (2.0, 0.0))
    assert sup_distance(a, b) == 3.0
    assert sup_distance(a, a) == 0.0
