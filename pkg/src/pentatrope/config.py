"""Runtime settings: tolerances and the sign-convention override.

CLI commands accept an optional JSON config file; keys under "tolerances"
replace the matching defaults, and "sign_convention" pins the per-family
choice instead of running the orbit oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .invariants import SignConvention

DEFAULT_TOLERANCES = {
    "conjugacy_rel": 1e-9,
    "conservation_drift": 1e-8,
    "geometry_rel": 1e-7,
    "convention_accept": 1e-8,
    "convention_reject": 1e-3,
}


@dataclass(frozen=True)
class Settings:
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    sign_convention: SignConvention | None = None
    seed: int = 0

    def tol(self, name: str) -> float:
        return self.tolerances[name]


def load_settings(path=None, seed: int | None = None) -> Settings:
    """Settings from an optional JSON file; unknown tolerance keys rejected."""
    settings = Settings()
    if path is not None:
        with open(path) as fh:
            obj = json.load(fh)
        tols = dict(DEFAULT_TOLERANCES)
        for key, value in obj.get("tolerances", {}).items():
            if key not in tols:
                raise ValueError(
                    f"unknown tolerance {key!r}; known: {sorted(tols)}"
                )
            tols[key] = float(value)
        convention = None
        if "sign_convention" in obj:
            sc = obj["sign_convention"]
            convention = SignConvention(bool(sc["o_signed"]), bool(sc["e_signed"]))
        settings = Settings(
            tolerances=tols,
            sign_convention=convention,
            seed=int(obj.get("seed", 0)),
        )
    if seed is not None:
        settings = replace(settings, seed=seed)
    return settings
