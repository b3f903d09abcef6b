"""Coordinate dynamics: the signed map T, its positive conjugate F, and
log-domain stepping.

States are pairs of length-n tuples (z, w) of Python numbers; arithmetic is
whatever the entries support, so Fraction states stay exact.  T and F differ
only in the sign inside the four cross terms:

    T:  z_i' = z_i (1 - z_{i-1} w_{i-1}) / (1 - z_{i+1} w_{i+1})
        w_i' = w_{i+1} (1 - z_{i+2} w_{i+2}) / (1 - z_i w_i)
    F:  same with (1 + ...) everywhere.

Negating every w (or every z) swaps the two: T(neg(s)) = neg(F(s)) exactly,
including in floating point, because negation is exact and both sides round
identically.
"""

from __future__ import annotations

import math

from .errors import SingularityError
from .semiring import check_scale, oplus_zero


def _check_state(z, w):
    if len(z) != len(w):
        raise ValueError(f"z and w have different lengths: {len(z)} vs {len(w)}")
    if len(z) < 5:
        raise ValueError(f"need at least 5 indices, got {len(z)}")


#: A float cross term 1 - z_i w_i below this (relative to max(1, |z_i w_i|))
#: counts as singular; exact types only reject exact zero.
SINGULARITY_TOL = 1e-12


def _step_signed(z, w, sign, step=None):
    """Shared kernel: sign=-1 gives T, sign=+1 gives F."""
    _check_state(z, w)
    n = len(z)
    cross = [1 + sign * z[i] * w[i] for i in range(n)]
    for i, c in enumerate(cross):
        near_zero = (
            abs(c) <= SINGULARITY_TOL * max(1.0, abs(z[i] * w[i]))
            if isinstance(c, float)
            else c == 0
        )
        if near_zero:
            raise SingularityError(
                f"cross term 1 {'-' if sign < 0 else '+'} z_i w_i vanishes",
                index=i,
                step=step,
            )
    z_new = tuple(z[i] * cross[(i - 1) % n] / cross[(i + 1) % n] for i in range(n))
    w_new = tuple(w[(i + 1) % n] * cross[(i + 2) % n] / cross[i] for i in range(n))
    return z_new, w_new


def step_T(z, w, step=None):
    """One step of the signed map T."""
    return _step_signed(z, w, -1, step=step)


def step_F(z, w, step=None):
    """One step of the positive-orthant conjugate F."""
    return _step_signed(z, w, +1, step=step)


def sign_conjugate(state, block: str = "w"):
    """Negate one block (z or w); the involution carrying F-orbits to
    T-orbits and back.  Exact, including in floating point."""
    z, w = state
    if block == "w":
        return tuple(z), tuple(-wi for wi in w)
    if block == "z":
        return tuple(-zi for zi in z), tuple(w)
    raise ValueError(f"block must be 'z' or 'w', got {block!r}")


def orbit(step_fn, z, w, steps: int):
    """List of states [(z, w), step(z, w), ..., step^steps(z, w)]."""
    states = [(tuple(z), tuple(w))]
    for k in range(steps):
        z, w = step_fn(z, w, step=k)
        states.append((z, w))
    return states


def step_F_log(x, y, t, step=None):
    """One F step on ln-coordinates: x_i = ln z_i / ln t, etc.

    Computes ln_t of F(t^x, t^y) without leaving the log domain, so it stays
    finite where the elementary values would overflow float range.  Equals
    the smooth t-interpolated automaton step exactly (same formula).
    """
    check_scale(t)
    _check_state(x, y)
    n = len(x)
    lt = math.log(t)
    h = [oplus_zero(x[i] + y[i], lt) for i in range(n)]
    x_new = tuple(x[i] + h[(i - 1) % n] - h[(i + 1) % n] for i in range(n))
    y_new = tuple(y[(i + 1) % n] + h[(i + 2) % n] - h[i] for i in range(n))
    return x_new, y_new


def random_state(rng, n: int, low: float = 0.4, high: float = 1.2, signs=None):
    """Random coordinate state with entries of magnitude in [low, high].

    ``signs`` is None for positive entries (F's domain) or a pair of sign
    tuples for a signed state.
    """
    z = tuple(rng.uniform(low, high) for _ in range(n))
    w = tuple(rng.uniform(low, high) for _ in range(n))
    if signs is not None:
        sz, sw = signs
        z = tuple(s * v for s, v in zip(sz, z))
        w = tuple(s * v for s, v in zip(sw, w))
    return z, w
