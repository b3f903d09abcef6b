"""Scaled log-sum-exp semiring and piecewise-linear max-plus forms.

For a scale t > 1, addition is ``x (+)_t y = log_t(t^x + t^y)`` and
multiplication is ordinary ``+``.  As t grows, ``(+)_t`` converges to ``max``,
so one list of affine terms can be read three ways:

* ``eval_maxplus``    -- the piecewise-linear max-plus value (the t = oo limit),
* ``eval_rt``         -- the smooth t-interpolant,
* ``eval_elementary`` -- the positive rational function obtained by the
  substitution z_i = t^{x_i}, which is conjugate to ``eval_rt`` through
  componentwise log_t.

The gap between the first two is at most ``log_t(M)`` where M is the product
of the two term counts; iterating a c-Lipschitz map compounds that gap by the
geometric-sum numbers ``p_number(N, c)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction


def check_scale(t) -> None:
    """Reject semiring scales outside the valid range t > 1."""
    if not t > 1:
        raise ValueError(f"semiring scale must satisfy t > 1, got {t!r}")


def oplus(t, values) -> float:
    """log_t of the sum of t^v over ``values``, evaluated in max-shifted form.

    The shift keeps every exponent non-positive, so no intermediate overflows
    even for |v| around 1e6 at t = 2.  A single value is returned unchanged.
    """
    check_scale(t)
    vals = [float(v) for v in values]
    if not vals:
        raise ValueError("oplus needs at least one value")
    m = max(vals)
    lt = math.log(t)
    acc = math.fsum(math.exp((v - m) * lt) for v in vals)
    return m + math.log(acc) / lt


def oplus_zero(u: float, log_t: float) -> float:
    """Stable log_t(1 + t^u), i.e. ``0 (+)_t u``, given log_t = ln(t).

    This is the hinge term of the interpolated dynamics; the two-branch form
    avoids overflow for large |u|.
    """
    a = u * log_t
    if a > 0.0:
        return u + math.log1p(math.exp(-a)) / log_t
    return math.log1p(math.exp(a)) / log_t


def _coerce_terms(terms, arity):
    out = []
    for term in terms:
        offset, exps = term
        exps = tuple(exps)
        if len(exps) != arity:
            raise ValueError(
                f"exponent vector {exps} has length {len(exps)}, expected {arity}"
            )
        if not all(isinstance(e, int) for e in exps):
            raise ValueError(f"exponents must be integers, got {exps!r}")
        out.append((offset, exps))
    return tuple(out)


@dataclass(frozen=True)
class MaxPlusPresentation:
    """Two lists of affine terms (offset, integer exponent vector).

    Read as max(plus terms) - max(minus terms); a pure max is represented
    with the single minus term (0, zero vector).
    """

    plus_terms: tuple
    minus_terms: tuple
    arity: int

    def __post_init__(self):
        object.__setattr__(self, "plus_terms", _coerce_terms(self.plus_terms, self.arity))
        object.__setattr__(self, "minus_terms", _coerce_terms(self.minus_terms, self.arity))
        if not self.plus_terms or not self.minus_terms:
            raise ValueError("plus_terms and minus_terms must both be nonempty")

    @classmethod
    def pure_max(cls, terms, arity: int) -> "MaxPlusPresentation":
        return cls(tuple(terms), ((0, (0,) * arity),), arity)

    @property
    def component_count(self) -> int:
        """M = (#plus terms) * (#minus terms)."""
        return len(self.plus_terms) * len(self.minus_terms)

    @property
    def lipschitz_constant(self):
        """Sup-metric Lipschitz upper bound: max ||a||_1 + max ||b||_1.

        Stored as an upper bound; not assumed tight.
        """
        plus = max(sum(abs(e) for e in exps) for _, exps in self.plus_terms)
        minus = max(sum(abs(e) for e in exps) for _, exps in self.minus_terms)
        return plus + minus

    def to_json_dict(self) -> dict:
        """JSON form; offsets become decimal strings so integers stay exact."""
        return {
            "plus": [[_offset_str(o), list(e)] for o, e in self.plus_terms],
            "minus": [[_offset_str(o), list(e)] for o, e in self.minus_terms],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, obj: dict) -> "MaxPlusPresentation":
        plus = [(_parse_offset(o), tuple(e)) for o, e in obj["plus"]]
        minus = [(_parse_offset(o), tuple(e)) for o, e in obj["minus"]]
        if not plus:
            raise ValueError("presentation JSON has no plus terms")
        arity = len(plus[0][1])
        return cls(tuple(plus), tuple(minus), arity)

    @classmethod
    def loads(cls, text: str) -> "MaxPlusPresentation":
        return cls.from_json_dict(json.loads(text))


def _offset_str(offset) -> str:
    if isinstance(offset, Fraction):
        return str(offset)
    return repr(offset)


def _parse_offset(text: str):
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    try:
        return int(text)
    except ValueError:
        return float(text)


def _dot(exps, x):
    return sum(e * xi for e, xi in zip(exps, x))


def _check_arity(p: MaxPlusPresentation, x) -> None:
    if len(x) != p.arity:
        raise ValueError(f"input has dimension {len(x)}, presentation arity is {p.arity}")


def eval_maxplus(p: MaxPlusPresentation, x):
    """max over plus terms minus max over minus terms.

    Pure Python arithmetic: integer (or Fraction) offsets and inputs give an
    exact integer (or Fraction) result.
    """
    _check_arity(p, x)
    plus = max(o + _dot(e, x) for o, e in p.plus_terms)
    minus = max(o + _dot(e, x) for o, e in p.minus_terms)
    return plus - minus


def eval_rt(p: MaxPlusPresentation, t, x) -> float:
    """The t-interpolant: oplus over plus terms minus oplus over minus terms.

    Converges pointwise to ``eval_maxplus`` as t -> oo, with gap at most
    log_t(component_count).
    """
    _check_arity(p, x)
    check_scale(t)
    plus = oplus(t, [o + _dot(e, x) for o, e in p.plus_terms])
    minus = oplus(t, [o + _dot(e, x) for o, e in p.minus_terms])
    return plus - minus


def eval_elementary(p: MaxPlusPresentation, t, z):
    """The positive rational form: sum_k t^{o_k} z^{e_k} over plus terms,
    divided by the same sum over minus terms.  Requires z > 0 componentwise."""
    _check_arity(p, z)
    check_scale(t)
    if any(not zi > 0 for zi in z):
        raise ValueError(f"elementary form needs positive inputs, got {tuple(z)}")
    num = sum(t ** o * _monomial(z, e) for o, e in p.plus_terms)
    den = sum(t ** o * _monomial(z, e) for o, e in p.minus_terms)
    return num / den


def _monomial(z, exps):
    out = 1
    for zi, e in zip(z, exps):
        if e:
            out = out * zi ** e
    return out


def p_number(N: int, c):
    """Geometric-sum growth numbers: (c^N - 1)/(c - 1) for c > 1, N for c = 1.

    They satisfy c * p_number(N, c) + 1 = p_number(N + 1, c); integer c gives
    an exact integer result.
    """
    if N < 0:
        raise ValueError(f"N must be nonnegative, got {N}")
    if c < 1:
        raise ValueError(f"c must be at least 1, got {c}")
    if c == 1:
        return N
    if isinstance(c, int):
        return (c ** N - 1) // (c - 1)
    return (c ** N - 1) / (c - 1)


def p_number_log(N: int, c) -> float:
    """Natural log of p_number(N, c), safe for N far beyond float range."""
    if N < 0:
        raise ValueError(f"N must be nonnegative, got {N}")
    if c < 1:
        raise ValueError(f"c must be at least 1, got {c}")
    if N == 0:
        return -math.inf
    if c == 1:
        return math.log(N)
    lc = math.log(c)
    return N * lc + math.log1p(-math.exp(-N * lc)) - math.log(c - 1)
