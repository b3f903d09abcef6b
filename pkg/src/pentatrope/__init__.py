"""Pentagram-map dynamics in cross-ratio coordinates, the max-plus limit
automaton, conserved quantities, and verification experiment drivers."""

from .automaton import (
    detect_period,
    is_shift_periodic_seed,
    lift_exponential,
    lift_quasiperiodic,
    step_phi,
    step_phi_t,
)
from .dynamics import sign_conjugate, step_F, step_T
from .errors import (
    ConventionError,
    DegeneracyError,
    GenericityError,
    GeometryError,
    PentatropeError,
    SingularityError,
)
from .geometry import (
    TwistedPolygon,
    canonical_coordinates,
    cross_ratio,
    cross_ratio_points,
    geometric_pentagram_step,
)
from .invariants import (
    AdmissibleMonomial,
    SignConvention,
    enumerate_admissible,
    eval_E_k,
    eval_O_k,
    invariant_rank_at,
    resolve_sign_convention,
    tropical_E_pm,
    tropical_O_k,
)
from .semiring import MaxPlusPresentation, eval_maxplus, eval_rt, oplus, p_number

__version__ = "0.1.0"

__all__ = [
    "AdmissibleMonomial",
    "ConventionError",
    "DegeneracyError",
    "GenericityError",
    "GeometryError",
    "MaxPlusPresentation",
    "PentatropeError",
    "SignConvention",
    "SingularityError",
    "TwistedPolygon",
    "canonical_coordinates",
    "cross_ratio",
    "cross_ratio_points",
    "detect_period",
    "enumerate_admissible",
    "eval_E_k",
    "eval_O_k",
    "eval_maxplus",
    "eval_rt",
    "geometric_pentagram_step",
    "invariant_rank_at",
    "is_shift_periodic_seed",
    "lift_exponential",
    "lift_quasiperiodic",
    "oplus",
    "p_number",
    "resolve_sign_convention",
    "sign_conjugate",
    "step_F",
    "step_T",
    "step_phi",
    "step_phi_t",
]
