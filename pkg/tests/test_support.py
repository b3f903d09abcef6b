"""Tests for the support layers: orbit files, configuration, figure rendering."""

import json

import pytest

from pentatrope.config import DEFAULT_TOLERANCES, Settings, load_settings
from pentatrope.invariants import SignConvention
from pentatrope.orbitio import (
    COORD_KEYS,
    TROPICAL_KEYS,
    read_orbit,
    write_orbit_csv,
    write_orbit_jsonl,
)
from pentatrope import plots


STATES = [
    ((1.5, 0.25, -1.0), (0.5, 2.0, 1.25)),
    ((0.75, 0.5, -2.0), (1.0, 1.0, 3.5)),
]
INT_STATES = [
    ((1, 0, -3), (2, -1, 0)),
    ((4, -2, 1), (0, 0, -1)),
]


class TestOrbitIO:
    @pytest.mark.parametrize("keys", [COORD_KEYS, TROPICAL_KEYS])
    def test_jsonl_roundtrip(self, tmp_path, keys):
        path = tmp_path / "orbit.jsonl"
        write_orbit_jsonl(STATES, keys, path)
        back_keys, back = read_orbit(path)
        assert back_keys == keys
        assert back == STATES

    @pytest.mark.parametrize("keys", [COORD_KEYS, TROPICAL_KEYS])
    def test_csv_roundtrip(self, tmp_path, keys):
        path = tmp_path / "orbit.csv"
        write_orbit_csv(STATES, keys, path)
        back_keys, back = read_orbit(path)
        assert back_keys == keys
        assert back == STATES

    def test_integer_entries_stay_exact(self, tmp_path):
        path = tmp_path / "orbit.jsonl"
        write_orbit_jsonl(INT_STATES, TROPICAL_KEYS, path)
        _, back = read_orbit(path)
        assert back == INT_STATES
        assert all(isinstance(v, int) for s in back for block in s for v in block)

    def test_read_rejects_unknown_shape(self, tmp_path):
        path = tmp_path / "orbit.jsonl"
        path.write_text(json.dumps({"step": 0, "a": [1], "b": [2]}) + "\n")
        with pytest.raises(ValueError):
            read_orbit(path)


class TestSettings:
    def test_defaults(self):
        s = Settings()
        assert s.tol("conservation_drift") == DEFAULT_TOLERANCES["conservation_drift"]
        assert s.sign_convention is None

    def test_load_overrides(self, tmp_path):
        cfg = tmp_path / "config.json"
        cfg.write_text(
            json.dumps(
                {
                    "tolerances": {"geometry_rel": 1e-5},
                    "sign_convention": {"o_signed": True, "e_signed": False},
                    "seed": 42,
                }
            )
        )
        s = load_settings(cfg)
        assert s.tol("geometry_rel") == 1e-5
        assert s.tol("conjugacy_rel") == DEFAULT_TOLERANCES["conjugacy_rel"]
        assert s.sign_convention == SignConvention(True, False)
        assert s.seed == 42

    def test_seed_argument_wins(self, tmp_path):
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps({"seed": 42}))
        assert load_settings(cfg, seed=7).seed == 7

    def test_unknown_tolerance_rejected(self, tmp_path):
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps({"tolerances": {"bogus": 1.0}}))
        with pytest.raises(ValueError):
            load_settings(cfg)

    def test_unknown_tolerance_name_in_tol(self):
        with pytest.raises(KeyError):
            Settings().tol("bogus")


class TestPlots:
    def test_invariant_drift_figure(self, tmp_path):
        rows = [
            (s, name, float(s), 0.0 if name == "sum_x" else 1e-12 * s)
            for s in range(4)
            for name in ("sum_x", "trop_O_1")
        ]
        out = tmp_path / "drift.png"
        plots.render_invariant_drift(rows, out)
        assert out.stat().st_size > 0

    def test_polygon_steps_figure(self, tmp_path):
        charts = [
            [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.5, 1.5), (0.0, 1.0)],
            [(0.2, 0.2), (0.8, 0.2), (0.8, 0.8), (0.5, 1.1), (0.2, 0.8)],
        ]
        out = tmp_path / "steps.png"
        plots.render_polygon_steps(charts, out)
        assert out.stat().st_size > 0

    def test_report_summary_figure(self, tmp_path):
        from pentatrope.experiments import run_sign_conjugacy

        rep = run_sign_conjugacy(n_values=(5,), trials=2)
        out = tmp_path / "summary.png"
        plots.render_report_summary([rep], out)
        assert out.stat().st_size > 0
