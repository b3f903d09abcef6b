"""Command-line surface: orbit generation, invariant tables, the polygon
construction, and the verification drivers with JSON reports.

Report-producing commands render companion figures next to their delimited
output unless --no-figures is passed.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import automaton, dynamics, geometry, invariants, orbitio, plots
from .config import load_settings
from .errors import PentatropeError, SingularityError
from .experiments import CHECKS, append_reports


@click.group()
def main():
    """Pentagram-map dynamics, its max-plus limit, and bound verification."""


# ---------------------------------------------------------------------------
# orbit


def _random_init(map_name: str, n: int, seed: int):
    import random

    rng = random.Random(f"orbit:{map_name}:{n}:{seed}")
    if map_name == "T":
        return (
            tuple(rng.choice((-1, 1)) * rng.uniform(0.4, 1.2) for _ in range(n)),
            tuple(rng.choice((-1, 1)) * rng.uniform(0.4, 1.2) for _ in range(n)),
        )
    if map_name == "F":
        return (
            tuple(rng.uniform(0.4, 1.2) for _ in range(n)),
            tuple(rng.uniform(0.4, 1.2) for _ in range(n)),
        )
    if map_name == "phi":
        return (
            tuple(rng.randint(-9, 9) for _ in range(n)),
            tuple(rng.randint(-9, 9) for _ in range(n)),
        )
    return (
        tuple(rng.uniform(-5.0, 5.0) for _ in range(n)),
        tuple(rng.uniform(-5.0, 5.0) for _ in range(n)),
    )


def _load_init(path):
    obj = json.loads(Path(path).read_text())
    for keys in (orbitio.COORD_KEYS, orbitio.TROPICAL_KEYS):
        if keys[0] in obj:
            return (tuple(obj[keys[0]]), tuple(obj[keys[1]]))
    raise click.ClickException("init file needs z/w or x/y arrays")


@main.command()
@click.option("--map", "map_name", type=click.Choice(["T", "F", "phi", "phi_t"]), required=True)
@click.option("--n", type=int, default=5, show_default=True)
@click.option("--steps", type=int, required=True)
@click.option("--t", type=float, default=2.0, show_default=True, help="Scale for phi_t.")
@click.option("--init", "init_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--format", "fmt", type=click.Choice(["jsonl", "csv"]), default="jsonl", show_default=True)
def orbit(map_name, n, steps, t, init_path, seed, out, fmt):
    """Iterate one of the maps and write the orbit to a file."""
    state = _load_init(init_path) if init_path else _random_init(map_name, n, seed)
    keys = orbitio.COORD_KEYS if map_name in ("T", "F") else orbitio.TROPICAL_KEYS
    steppers = {
        "T": lambda s: dynamics.step_T(*s),
        "F": lambda s: dynamics.step_F(*s),
        "phi": lambda s: automaton.step_phi(*s),
        "phi_t": lambda s: automaton.step_phi_t(*s, t),
    }
    step_fn = steppers[map_name]
    states = [state]
    truncated = None
    for k in range(steps):
        try:
            states.append(step_fn(states[-1]))
        except SingularityError as exc:
            truncated = f"orbit stopped at step {k}: {exc}"
            break
    writer = orbitio.write_orbit_jsonl if fmt == "jsonl" else orbitio.write_orbit_csv
    writer(states, keys, out)
    click.echo(f"wrote {len(states)} states to {out}")
    if truncated:
        click.echo(truncated, err=True)
        sys.exit(1)


# ---------------------------------------------------------------------------
# invariants


def _coordinate_rows(states, convention):
    n = len(states[0][0])
    weights = list(range(1, invariants.max_weight(n) + 1)) + [n]
    rows = []
    base = {}
    for step, s in enumerate(states):
        for kind, fn in (("O", invariants.eval_O_k), ("E", invariants.eval_E_k)):
            for k in weights:
                name = f"{kind}_{k}"
                value = fn(s, k, convention)
                base.setdefault(name, value)
                rows.append((step, name, value, value - base[name]))
    return rows


def _tropical_rows(states):
    n = len(states[0][0])
    weights = list(range(1, invariants.max_weight(n) + 1))
    rows = []
    base = {}

    def emit(step, name, value):
        base.setdefault(name, value)
        drift = value - base[name] if value == value else float("nan")
        rows.append((step, name, value, drift))

    for step, s in enumerate(states):
        emit(step, "sum_x", sum(s[0]))
        emit(step, "sum_y", sum(s[1]))
        for k in weights:
            emit(step, f"trop_O_{k}", invariants.tropical_O_k(s, k))
            plus, minus = invariants.tropical_E_pm(s, k)
            emit(step, f"trop_E_{k}_plus", plus)
            emit(step, f"trop_E_{k}_minus", minus)
            emit(step, f"trop_E_{k}_max", max(plus, minus))
    return rows


@main.command("invariants")
@click.option("--orbit", "orbit_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--map", "map_name", type=click.Choice(["auto", "T", "F", "phi"]), default="auto", show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), help="CSV output (default: stdout).")
@click.option("--figures/--no-figures", default=True, show_default=True)
def invariants_cmd(orbit_path, map_name, config_path, out, figures):
    """Tabulate conserved quantities along a stored orbit (CSV: step, name,
    value, drift)."""
    keys, states = orbitio.read_orbit(orbit_path)
    settings = load_settings(config_path)
    if keys == orbitio.TROPICAL_KEYS:
        rows = _tropical_rows(states)
    else:
        n = len(states[0][0])
        convention = settings.sign_convention
        if convention is None:
            convention = invariants.resolve_sign_convention(n, seed=settings.seed)
        if map_name == "F":
            convention = convention.conjugate()
        rows = _coordinate_rows(states, convention)
    lines = ["step,name,value,drift"] + [
        f"{step},{name},{value!r},{drift!r}" for step, name, value, drift in rows
    ]
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text)
        click.echo(f"wrote {len(rows)} rows to {out}")
        if figures:
            fig = Path(out).with_suffix(".png")
            plots.render_invariant_drift(
                [(s, nm, float(v), float(d)) for s, nm, v, d in rows], fig
            )
            click.echo(f"wrote {fig}")
    else:
        click.echo(text, nl=False)


# ---------------------------------------------------------------------------
# polygon


@main.command()
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--steps", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), help="CSV output (default: stdout).")
@click.option("--out-polygon", type=click.Path(dir_okay=False), help="Write the final polygon JSON here.")
@click.option("--figures/--no-figures", default=True, show_default=True)
def polygon(in_path, steps, out, out_polygon, figures):
    """Run the diagonal-intersection construction on a polygon file and emit
    per-step vertex charts (CSV: step, i, x, y)."""
    poly = geometry.load_polygon(in_path)
    polys = [poly]
    try:
        for _ in range(steps):
            polys.append(geometry.geometric_pentagram_step(polys[-1]))
    except PentatropeError as exc:
        raise click.ClickException(str(exc))
    charts = []
    lines = ["step,i,x,y"]
    for step, p in enumerate(polys):
        chart = [geometry.affine_chart(v) for v in p.vertices]
        charts.append(chart)
        for i, (cx, cy) in enumerate(chart):
            lines.append(f"{step},{i},{cx!r},{cy!r}")
    text = "\n".join(lines) + "\n"
    if out_polygon:
        geometry.save_polygon(polys[-1], out_polygon)
        click.echo(f"wrote {out_polygon}")
    if out:
        Path(out).write_text(text)
        click.echo(f"wrote {len(lines) - 1} rows to {out}")
        if figures:
            fig = Path(out).with_suffix(".png")
            plots.render_polygon_steps(charts, fig)
            click.echo(f"wrote {fig}")
    else:
        click.echo(text, nl=False)


# ---------------------------------------------------------------------------
# verify


@main.command()
@click.argument("check", type=click.Choice(sorted(CHECKS) + ["all"]))
@click.option("--n", "n_values", type=int, multiple=True, help="Override the n set.")
@click.option("--seed", type=int, default=None)
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default="report.json", show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--figures/--no-figures", default=True, show_default=True)
def verify(check, n_values, seed, report_path, config_path, figures):
    """Run verification drivers and append their reports to a JSON file;
    exits nonzero when any bound fails."""
    settings = load_settings(config_path, seed=seed)
    names = sorted(CHECKS) if check == "all" else [check]
    reports = []
    for name in names:
        reports.extend(CHECKS[name](settings, n_values=n_values or None, seed=seed))
    append_reports(reports, report_path)
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        click.echo(
            f"{status}  {r.name}: observed {r.max_observed:.6g} vs bound {r.bound:.6g}"
            f"  [{r.samples} samples, {r.runtime_ms} ms]"
        )
    click.echo(f"appended {len(reports)} reports to {report_path}")
    if figures:
        fig = Path(report_path).with_suffix(".png")
        plots.render_report_summary(reports, fig)
        click.echo(f"wrote {fig}")
    if not all(r.passed for r in reports):
        sys.exit(1)


if __name__ == "__main__":
    main()
