"""Orbit serialization: JSON-lines (one record per step) and the flat CSV
alternative.

Coordinate orbits use keys "z"/"w"; automaton orbits use "x"/"y".  CSV rows
are (step, kind, index, value) with kind naming the block.
"""

from __future__ import annotations

import csv
import json

COORD_KEYS = ("z", "w")
TROPICAL_KEYS = ("x", "y")


def _plain(v):
    # integer entries round-trip exactly; everything else becomes float
    return v if isinstance(v, int) else float(v)


def write_orbit_jsonl(states, keys, path) -> None:
    with open(path, "w") as fh:
        for step, (a, b) in enumerate(states):
            rec = {"step": step, keys[0]: [_plain(v) for v in a], keys[1]: [_plain(v) for v in b]}
            fh.write(json.dumps(rec) + "\n")


def write_orbit_csv(states, keys, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "kind", "index", "value"])
        for step, (a, b) in enumerate(states):
            for kind, block in zip(keys, (a, b)):
                for index, value in enumerate(block):
                    writer.writerow([step, kind, index, _plain(value)])


def read_orbit(path):
    """Load an orbit file (either format), returning (keys, states).

    keys is ("z", "w") or ("x", "y") depending on what the file holds.
    """
    text = open(path).read()
    first = text.lstrip()[:1]
    if first == "{":
        return _read_jsonl(text)
    return _read_csv(text)


def _read_jsonl(text):
    states = []
    keys = None
    for line in text.splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        if keys is None:
            keys = COORD_KEYS if COORD_KEYS[0] in rec else TROPICAL_KEYS
        if keys[0] not in rec or keys[1] not in rec:
            raise ValueError(f"orbit record at step {rec.get('step')} missing {keys} blocks")
        states.append((tuple(rec[keys[0]]), tuple(rec[keys[1]])))
    if not states:
        raise ValueError("empty orbit file")
    return keys, states


def _read_csv(text):
    rows = list(csv.reader(text.splitlines()))
    if not rows or rows[0][:1] != ["step"]:
        raise ValueError("unrecognized orbit file (expected JSON lines or step CSV)")
    kinds = sorted({r[1] for r in rows[1:] if r})
    if kinds == sorted(COORD_KEYS):
        keys = COORD_KEYS
    elif kinds == sorted(TROPICAL_KEYS):
        keys = TROPICAL_KEYS
    else:
        raise ValueError(f"unrecognized block kinds {kinds} in orbit CSV")
    by_step = {}
    for step_s, kind, index_s, value_s in rows[1:]:
        try:
            value = int(value_s)
        except ValueError:
            value = float(value_s)
        by_step.setdefault(int(step_s), {}).setdefault(kind, {})[int(index_s)] = value
    states = []
    for step in sorted(by_step):
        blocks = by_step[step]
        states.append(
            tuple(
                tuple(blocks[k][i] for i in sorted(blocks[k]))
                for k in keys
            )
        )
    return keys, states
