"""Conserved quantities: admissible monomials, the O/E families, their
max-plus counterparts, sign-convention resolution, and level-set rank.

The building blocks are the triples Z_i = z_i w_i z_{i+1} and singletons z_j.
The E-family exchanges the letters z and w AND mirrors the alignment: its
triple is W_i = w_i z_{i+1} w_{i+1} (interleaved letter on the right end,
where Z_i has it on the left).  The naive unmirrored exchange w_i z_i w_{i+1}
conserves nothing -- the orbit-drift oracle in this module is what selects
the implemented block.  A monomial is admissible when no two factors are
consecutive:

    Z_i ~ Z_j   iff  j in {i-2 .. i+2}   (mod n)
    Z_i ~ z_j   iff  j in {i-1 .. i+2}   (mod n)
    z_i ~ z_j   iff  |i - j| <= 1        (mod n)

Weight k monomials have s triples and r singletons with s + r = k, and carry
the sign (-1)^r.  Whether a family is summed signed or unsigned is NOT taken
from any text: ``resolve_sign_convention`` decides it by measuring drift
along orbits of the signed map T, per family, and fails loudly on ambiguity.

Max-plus counterparts replace each product by the sum of logs and the outer
sum by a max; those are conserved exactly (integer arithmetic) by the
automaton step.  The signed E-family tropicalizes to a pair of maxima, one
per sign class, whose pointwise max is conserved on orbits without leading-
term cancellation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import inf

from .dynamics import step_T
from .errors import ConventionError, GenericityError, SingularityError


# ---------------------------------------------------------------------------
# admissible monomials


@dataclass(frozen=True)
class AdmissibleMonomial:
    """One term of a weight-k conserved sum: triple factors at big_indices,
    singleton factors at small_indices."""

    kind: str  # 'O' or 'E'
    big_indices: tuple
    small_indices: tuple
    n: int

    def __post_init__(self):
        if self.kind not in ("O", "E"):
            raise ValueError(f"kind must be 'O' or 'E', got {self.kind!r}")
        object.__setattr__(self, "big_indices", tuple(sorted(self.big_indices)))
        object.__setattr__(self, "small_indices", tuple(sorted(self.small_indices)))

    @property
    def weight(self) -> int:
        return len(self.big_indices) + len(self.small_indices)

    @property
    def sign(self) -> int:
        """(-1) to the number of singleton factors."""
        return -1 if len(self.small_indices) % 2 else 1


def _circ_dist(i: int, j: int, n: int) -> int:
    d = (i - j) % n
    return min(d, n - d)


def _big_pair_ok(i: int, j: int, n: int) -> bool:
    return _circ_dist(i, j, n) >= 3


def _small_pair_ok(i: int, j: int, n: int) -> bool:
    return _circ_dist(i, j, n) >= 2


def _big_small_ok(big: int, small: int, n: int) -> bool:
    # consecutive when small - big is in {-1, 0, 1, 2} mod n
    return (small - big) % n not in (n - 1, 0, 1, 2)


def max_weight(n: int) -> int:
    """Largest generic family weight: floor(n/2)."""
    return n // 2


@lru_cache(maxsize=None)
def enumerate_admissible(n: int, k: int, kind: str = "O"):
    """All admissible weight-k monomials, sorted by (big, small) index tuples.

    Only the generic range 1 <= k <= floor(n/2) enumerates; the weight-n
    quantities are single products handled directly by the evaluators.
    """
    if n < 5:
        raise ValueError(f"need n >= 5, got {n}")
    if not 1 <= k <= max_weight(n):
        raise ValueError(
            f"weight {k} out of range 1..{max_weight(n)} for n={n}"
            + (" (weight n is a plain product, not an enumerated sum)" if k == n else "")
        )
    out = []
    for s in range(k + 1):
        r = k - s
        for big in itertools.combinations(range(n), s):
            if not all(_big_pair_ok(a, b, n) for a, b in itertools.combinations(big, 2)):
                continue
            allowed = [
                j
                for j in range(n)
                if all(_big_small_ok(b, j, n) for b in big)
            ]
            for small in itertools.combinations(allowed, r):
                if not all(
                    _small_pair_ok(a, b, n) for a, b in itertools.combinations(small, 2)
                ):
                    continue
                out.append(AdmissibleMonomial(kind, big, small, n))
    out.sort(key=lambda m: (m.big_indices, m.small_indices))
    return tuple(out)


# ---------------------------------------------------------------------------
# sign conventions


@dataclass(frozen=True)
class SignConvention:
    """Per-family choice of whether the (-1)^r monomial sign is applied."""

    o_signed: bool
    e_signed: bool

    def conjugate(self) -> "SignConvention":
        """The matching convention for the positive map F.

        Negating z multiplies O monomials by (-1)^r and E monomials by
        (-1)^s = (-1)^{k-r}, so conservation under one map with a given
        convention is conservation under the other with both flags flipped.
        """
        return SignConvention(not self.o_signed, not self.e_signed)

    def describe(self) -> str:
        o = "signed" if self.o_signed else "unsigned"
        e = "signed" if self.e_signed else "unsigned"
        return f"O {o}, E {e}"


# ---------------------------------------------------------------------------
# elementary evaluation


def _prod(values):
    out = 1
    for v in values:
        out = out * v
    return out


def _monomial_value_O(m: AdmissibleMonomial, z, w):
    n = m.n
    big = _prod(z[i] * w[i] * z[(i + 1) % n] for i in m.big_indices)
    small = _prod(z[j] for j in m.small_indices)
    return big * small


def _monomial_value_E(m: AdmissibleMonomial, z, w):
    n = m.n
    big = _prod(w[i] * z[(i + 1) % n] * w[(i + 1) % n] for i in m.big_indices)
    small = _prod(w[j] for j in m.small_indices)
    return big * small


def eval_O_k(state, k: int, convention: SignConvention):
    """Weight-k conserved sum of the z-leading family; k = n is the plain
    product of all z_i."""
    z, w = state
    n = len(z)
    if k == n:
        return _prod(z)
    total = 0
    for m in enumerate_admissible(n, k, "O"):
        v = _monomial_value_O(m, z, w)
        total = total + (m.sign * v if convention.o_signed else v)
    return total


def eval_E_k(state, k: int, convention: SignConvention):
    """Mirror of eval_O_k with z and w exchanged; k = n is the product of
    all w_i."""
    z, w = state
    n = len(z)
    if k == n:
        return _prod(w)
    total = 0
    for m in enumerate_admissible(n, k, "E"):
        v = _monomial_value_E(m, z, w)
        total = total + (m.sign * v if convention.e_signed else v)
    return total


def term_scale(state, k: int, kind: str) -> float:
    """Sum of |monomial| values: the natural conditioning scale for drift."""
    z, w = state
    n = len(z)
    if k == n:
        return abs(float(_prod(z if kind == "O" else w)))
    value_fn = _monomial_value_O if kind == "O" else _monomial_value_E
    return float(
        sum(abs(value_fn(m, z, w)) for m in enumerate_admissible(n, k, kind))
    )


# ---------------------------------------------------------------------------
# tropical evaluation


def _tropical_value_O(m: AdmissibleMonomial, x, y):
    n = m.n
    zero = x[0] - x[0]
    return sum((x[i] + y[i] + x[(i + 1) % n] for i in m.big_indices), zero) + sum(
        (x[j] for j in m.small_indices), zero
    )


def _tropical_value_E(m: AdmissibleMonomial, x, y):
    n = m.n
    zero = x[0] - x[0]
    return sum((y[i] + x[(i + 1) % n] + y[(i + 1) % n] for i in m.big_indices), zero) + sum(
        (y[j] for j in m.small_indices), zero
    )


def tropical_O_k(state, k: int):
    """Max over the weight-k index sets of sum(x_i + y_i + x_{i+1}) + sum(x_j);
    exact on integer states.  k = n gives sum(x)."""
    x, y = state
    n = len(x)
    if k == n:
        return sum(x)
    return max(_tropical_value_O(m, x, y) for m in enumerate_admissible(n, k, "O"))


def tropical_E_pm(state, k: int):
    """The pair (max over sign +1 monomials, max over sign -1 monomials) of
    the z<->w exchanged family.  An empty sign class yields -inf."""
    x, y = state
    n = len(x)
    plus, minus = -inf, -inf
    for m in enumerate_admissible(n, k, "E"):
        v = _tropical_value_E(m, x, y)
        if m.sign > 0:
            plus = v if plus == -inf else max(plus, v)
        else:
            minus = v if minus == -inf else max(minus, v)
    return plus, minus


def tropical_E_k(state, k: int):
    """Max over both sign classes; the conserved combination on generic
    orbits."""
    return max(tropical_E_pm(state, k))


# ---------------------------------------------------------------------------
# sign-convention oracle


def sample_conditioned_orbit(rng, n: int, steps: int, attempts: int = 200):
    """A random signed state whose T-orbit stays numerically well-conditioned:
    cross terms bounded away from 0, magnitudes within [1e-6, 1e6]."""
    for _ in range(attempts):
        z = tuple(rng.choice((-1, 1)) * rng.uniform(0.4, 1.2) for _ in range(n))
        w = tuple(rng.choice((-1, 1)) * rng.uniform(0.4, 1.2) for _ in range(n))
        states = [(z, w)]
        ok = True
        zz, ww = z, w
        for _ in range(steps):
            if any(abs(1 - zz[i] * ww[i]) < 1e-3 for i in range(n)):
                ok = False
                break
            try:
                zz, ww = step_T(zz, ww)
            except SingularityError:
                ok = False
                break
            if any(not 1e-6 < abs(v) < 1e6 for v in zz + ww):
                ok = False
                break
            states.append((zz, ww))
        if ok:
            return states
    raise ConventionError(
        f"could not sample a well-conditioned {steps}-step orbit for n={n}"
    )


def _family_drift(states, kind: str, signed: bool) -> float:
    """Max relative drift of every weight of one family along an orbit,
    measured against the initial term-magnitude scale."""
    convention = SignConvention(signed, signed)
    eval_fn = eval_O_k if kind == "O" else eval_E_k
    n = len(states[0][0])
    worst = 0.0
    for k in list(range(1, max_weight(n) + 1)) + [n]:
        v0 = eval_fn(states[0], k, convention)
        scale = max(abs(v0), 1e-3 * term_scale(states[0], k, kind), 1e-12)
        for s in states[1:]:
            worst = max(worst, abs(eval_fn(s, k, convention) - v0) / scale)
    return worst


def resolve_sign_convention(
    n: int,
    seed: int = 0,
    trials: int = 50,
    steps: int = 10,
    accept_tol: float = 1e-8,
    reject_floor: float = 1e-3,
) -> SignConvention:
    """Decide per family whether the monomial sign is applied, by measuring
    conservation along random T-orbits.

    A choice wins its family when it drifts at most ``accept_tol`` on every
    trial while the opposite choice exceeds ``reject_floor`` on at least half
    of them; anything else raises, surfacing a real discrepancy instead of
    guessing.
    """
    if not 5 <= n <= 8:
        raise ValueError(f"convention oracle supports n in 5..8, got {n}")
    rng = random.Random(f"sign-convention:{n}:{seed}")
    worst = {("O", False): 0.0, ("O", True): 0.0, ("E", False): 0.0, ("E", True): 0.0}
    rejects = {key: 0 for key in worst}
    for _ in range(trials):
        states = sample_conditioned_orbit(rng, n, steps)
        for kind, signed in worst:
            d = _family_drift(states, kind, signed)
            worst[(kind, signed)] = max(worst[(kind, signed)], d)
            if d > reject_floor:
                rejects[(kind, signed)] += 1

    chosen = {}
    for kind in ("O", "E"):
        passing = [s for s in (False, True) if worst[(kind, s)] <= accept_tol]
        rejected = [s for s in (False, True) if rejects[(kind, s)] >= trials // 2]
        if len(passing) == 1 and (not passing[0]) in rejected:
            chosen[kind] = passing[0]
        else:
            raise ConventionError(
                f"{kind}-family sign convention ambiguous for n={n}: "
                f"max drift unsigned={worst[(kind, False)]:.3e}, "
                f"signed={worst[(kind, True)]:.3e}"
            )
    return SignConvention(chosen["O"], chosen["E"])


# ---------------------------------------------------------------------------
# level-set rank


def _is_exact(values) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values)


def _gradient_O(m: AdmissibleMonomial):
    n = m.n
    g = [0] * (2 * n)
    for i in m.big_indices:
        g[i] += 1
        g[n + i] += 1
        g[(i + 1) % n] += 1
    for j in m.small_indices:
        g[j] += 1
    return g


def _gradient_E(m: AdmissibleMonomial):
    n = m.n
    g = [0] * (2 * n)
    for i in m.big_indices:
        g[n + i] += 1
        g[(i + 1) % n] += 1
        g[n + (i + 1) % n] += 1
    for j in m.small_indices:
        g[n + j] += 1
    return g


def _unique_argmax(values, margin, label: str):
    """Index of the strict maximum; raises when the top two are within
    ``margin`` of each other."""
    order = sorted(range(len(values)), key=lambda i: values[i], reverse=True)
    best = order[0]
    if len(order) > 1 and not values[best] - values[order[1]] > margin:
        raise GenericityError(f"{label}: tied maximum at monomials {best} and {order[1]}")
    return best


def rational_rank(rows) -> int:
    """Rank over the rationals by fraction-free-enough Gaussian elimination
    (entries promoted to Fraction, so no tolerance enters)."""
    mat = [[Fraction(v) for v in row] for row in rows]
    if not mat:
        return 0
    cols = len(mat[0])
    rank = 0
    col = 0
    while rank < len(mat) and col < cols:
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        prow = mat[rank]
        for r in range(rank + 1, len(mat)):
            if mat[r][col] != 0:
                factor = mat[r][col] / prow[col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], prow)]
        rank += 1
        col += 1
    return rank


def invariant_rank_at(state, margin: float = 1e-9) -> int:
    """Rank of the stacked gradients of the 2*floor(n/2)+2 max-plus conserved
    quantities at a generic point.

    Genericity: every maximum is attained by a unique monomial and every
    dynamics hinge x_i + y_i is off its breakpoint.  Exact (int/Fraction)
    states use strict comparisons; float states use ``margin``.
    """
    x, y = state
    n = len(x)
    exact = _is_exact(x) and _is_exact(y)
    gap = 0 if exact else margin

    for i in range(n):
        h = x[i] + y[i]
        if (h == 0) if exact else (abs(h) <= margin):
            raise GenericityError(f"hinge x_{i} + y_{i} at its breakpoint")

    rows = []
    for k in range(1, max_weight(n) + 1):
        monos = enumerate_admissible(n, k, "O")
        values = [_tropical_value_O(m, x, y) for m in monos]
        best = _unique_argmax(values, gap, f"tilde-O_{k}")
        rows.append(_gradient_O(monos[best]))

        monos_e = enumerate_admissible(n, k, "E")
        values_e = [_tropical_value_E(m, x, y) for m in monos_e]
        best_e = _unique_argmax(values_e, gap, f"tilde-E_{k}")
        rows.append(_gradient_E(monos_e[best_e]))

    rows.append([1] * n + [0] * n)  # sum of x
    rows.append([0] * n + [1] * n)  # sum of y
    return rational_rank(rows)


def expected_rank(n: int) -> int:
    return 2 * max_weight(n) + 2


def expected_level_set_dimension(n: int) -> int:
    """2n minus the generic rank: 2*floor((n+1)/2) - 2."""
    return 2 * n - expected_rank(n)
