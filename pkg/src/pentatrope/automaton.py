"""The max-plus limit automaton and its smooth t-interpolants.

State is a pair of length-n tuples (x, y).  One automaton step is

    x_i' = x_i + max(0, x_{i-1} + y_{i-1}) - max(0, x_{i+1} + y_{i+1})
    y_i' = y_{i+1} + max(0, x_{i+2} + y_{i+2}) - max(0, x_i + y_i)

with indices mod n.  Replacing every max(0, u) by log_t(1 + t^u) gives the
t-interpolated step, which is conjugate to the positive map F through
componentwise log_t.  Both steps are 5-Lipschitz in the sup metric and each
hinge is a quotient of shapes with 2 x 2 = 4 affine pieces, so l steps of the
two dynamics started at the same point differ by at most

    p_number(l, 5) * log_t(4)        (see ``semiring.p_number``).

Integer (or Fraction) states stay exact under the max-plus step.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .semiring import MaxPlusPresentation, check_scale, oplus_zero

#: Hinge shape count: max(0, u) interpolates through log_t(1 + t^u), a
#: quotient of two 2-term shapes.
COMPONENT_BOUND = 4

#: Sup-metric Lipschitz bound for one automaton step: each output reads at
#: most 3 coordinates positively and 2 negatively.
LIPSCHITZ_BOUND = 5


def _check_state(x, y):
    if len(x) != len(y):
        raise ValueError(f"x and y have different lengths: {len(x)} vs {len(y)}")
    if len(x) < 5:
        raise ValueError(f"need at least 5 indices, got {len(x)}")


def step_phi(x, y):
    """One max-plus automaton step; exact on int/Fraction states."""
    _check_state(x, y)
    n = len(x)
    zero = x[0] - x[0]  # additive zero matching the entry type
    h = [max(zero, x[i] + y[i]) for i in range(n)]
    x_new = tuple(x[i] + h[(i - 1) % n] - h[(i + 1) % n] for i in range(n))
    y_new = tuple(y[(i + 1) % n] + h[(i + 2) % n] - h[i] for i in range(n))
    return x_new, y_new


def step_phi_t(x, y, t):
    """One t-interpolated step: max(0, u) softened to log_t(1 + t^u)."""
    check_scale(t)
    _check_state(x, y)
    n = len(x)
    lt = math.log(t)
    h = [oplus_zero(float(x[i]) + float(y[i]), lt) for i in range(n)]
    x_new = tuple(float(x[i]) + h[(i - 1) % n] - h[(i + 1) % n] for i in range(n))
    y_new = tuple(float(y[(i + 1) % n]) + h[(i + 2) % n] - h[i] for i in range(n))
    return x_new, y_new


def orbit_phi(x, y, steps: int):
    states = [(tuple(x), tuple(y))]
    for _ in range(steps):
        x, y = step_phi(x, y)
        states.append((x, y))
    return states


def orbit_phi_t(x, y, t, steps: int):
    states = [(tuple(float(v) for v in x), tuple(float(v) for v in y))]
    for _ in range(steps):
        x, y = step_phi_t(x, y, t)
        states.append((x, y))
    return states


def component_presentation(n: int, index: int, part: str) -> MaxPlusPresentation:
    """One output component of the automaton step as explicit affine terms.

    Variables are ordered (x_0..x_{n-1}, y_0..y_{n-1}).  ``part`` selects the
    'x' or 'y' row at ``index``.  Expanding

        x_i + max(0, u_{i-1}) - max(0, u_{i+1}),   u_j = x_j + y_j

    gives 2 plus terms over 2 minus terms, matching COMPONENT_BOUND, and the
    1-norms realize LIPSCHITZ_BOUND.
    """
    if part not in ("x", "y"):
        raise ValueError(f"part must be 'x' or 'y', got {part!r}")
    if not 0 <= index < n:
        raise ValueError(f"index {index} out of range for n={n}")

    def unit(*pairs):
        v = [0] * (2 * n)
        for kind, j, coeff in pairs:
            v[(j % n) + (n if kind == "y" else 0)] += coeff
        return tuple(v)

    i = index
    if part == "x":
        base = unit(("x", i, 1))
        hinge_plus, hinge_minus = i - 1, i + 1
    else:
        base = unit(("y", i + 1, 1))
        hinge_plus, hinge_minus = i + 2, i

    u_plus = unit(("x", hinge_plus, 1), ("y", hinge_plus, 1))
    u_minus = unit(("x", hinge_minus, 1), ("y", hinge_minus, 1))
    add = lambda a, b: tuple(p + q for p, q in zip(a, b))
    plus = ((0, base), (0, add(base, u_plus)))
    minus = ((0, (0,) * (2 * n)), (0, u_minus))
    return MaxPlusPresentation(plus, minus, 2 * n)


def is_shift_periodic_seed(x, y) -> bool:
    """Membership in the polytope {x_i + y_j <= 0 for all i, j}.

    Equivalent to max(x) + max(y) <= 0.  On this set every hinge
    max(0, x_i + y_i) vanishes now and stays zero, so the step reduces to
    (x, y) -> (x, shift-left(y)) and the orbit is periodic with period
    dividing n.
    """
    _check_state(x, y)
    return max(x) + max(y) <= 0


def shift_orbit_state(x, y, steps: int):
    """Where a shift-periodic seed lands after ``steps`` automaton steps."""
    n = len(y)
    k = steps % n
    return tuple(x), tuple(y[(i + k) % n] for i in range(n))


def sup_distance(a, b) -> float:
    """Sup metric on states: max componentwise |difference| over both blocks."""
    (xa, ya), (xb, yb) = a, b
    return max(
        max(abs(float(p) - float(q)) for p, q in zip(xa, xb)),
        max(abs(float(p) - float(q)) for p, q in zip(ya, yb)),
    )


def detect_period(x, y, k_max: int | None = None, tol: float | None = None):
    """Smallest k <= k_max with phi^k(state) = state, else None.

    Exact equality on int/Fraction states; float states need ``tol``
    (sup-metric, default 1e-9 when any entry is a float).
    """
    _check_state(x, y)
    n = len(x)
    if k_max is None:
        k_max = n * n
    exact = all(isinstance(v, (int, Fraction)) for v in x + y)
    if not exact and tol is None:
        tol = 1e-9
    start = (tuple(x), tuple(y))
    cur = start
    for k in range(1, k_max + 1):
        cur = step_phi(*cur)
        if (cur == start) if exact else (sup_distance(cur, start) <= tol):
            return k
    return None


def lift_exponential(t, x, y):
    """Componentwise t^x, t^y: the positive state whose log_t image is (x, y).

    Guards against float overflow: |entry * ln t| > 700 must run in the log
    domain instead (step_phi_t IS that execution).
    """
    check_scale(t)
    _check_state(x, y)
    lt = math.log(t)
    for v in tuple(x) + tuple(y):
        if abs(float(v) * lt) > 700:
            raise OverflowError(
                f"t^{v} at t={t} exceeds float range; use the log-domain step"
            )
    return tuple(t ** float(v) for v in x), tuple(t ** float(v) for v in y)


def lift_quasiperiodic(t, x, y, block: str = "w"):
    """Exponential lift with one block negated: initial data whose signed-map
    orbit mirrors the positive-map orbit of the plain lift."""
    from .dynamics import sign_conjugate

    return sign_conjugate(lift_exponential(t, x, y), block)


def random_shift_periodic_seed(rng, n: int, denominator_bound: int = 7):
    """Random rational point of the shift-periodic polytope.

    Draws Fraction x entries, then y entries at or below -max(x), so
    max(x) + max(y) <= 0 holds exactly in rational arithmetic.
    """
    from fractions import Fraction

    def frac(lo, hi):
        den = rng.randint(1, denominator_bound)
        num = rng.randint(lo * den, hi * den)
        return Fraction(num, den)

    x = tuple(frac(-3, 2) for _ in range(n))
    slack = frac(0, 2)
    ceiling = -max(x) - slack  # forces max(y) <= -max(x)
    y = tuple(ceiling - frac(0, 3) for _ in range(n))
    assert max(x) + max(y) <= 0
    return x, y
