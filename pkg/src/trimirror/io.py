"""Plain-text data files and the run manifest.

Every emitted file is self-describing: comment lines (``#``) carry the
metadata and units, followed by a header row naming the columns.  Times are
in units of 1/w_b, occupations are dimensionless dressed expectations
<X^- X^+>, entanglement is in bits.  Floats are written with shortest
round-trip precision, so reruns with identical inputs are byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

__all__ = [
    "write_occupations_csv",
    "write_chevron_csv",
    "write_sw_verification_csv",
    "write_manifest",
    "read_manifest",
]


def _fmt(x) -> str:
    return repr(float(x))


def _meta_lines(kind: str, meta: dict) -> list[str]:
    lines = [f"# trimirror {kind}"]
    for key in meta:
        lines.append(f"# {key}: {meta[key]}")
    return lines


def write_occupations_csv(path, grid, occupations, kind: str, meta: dict, jumps=None) -> None:
    """Time series of the three dressed occupations, one row per grid point."""
    occupations = np.asarray(occupations)
    lines = _meta_lines(kind, meta)
    lines.append("# columns: t [1/omega_b], n_a, n_b, n_c [dressed <X^- X^+>]")
    if jumps is not None:
        for t, channel in jumps:
            lines.append(f"# jump: t={_fmt(t)} channel={channel}")
    lines.append("t,n_a,n_b,n_c")
    for k, t in enumerate(grid.times):
        lines.append(
            f"{_fmt(t)},{_fmt(occupations[0, k])},{_fmt(occupations[1, k])},{_fmt(occupations[2, k])}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_chevron_csv(path, scan, meta: dict) -> None:
    """Long-format (t, delta, E_N) triples of a detuning scan."""
    lines = _meta_lines("chevron", meta)
    lines.append("# columns: t [1/omega_b], delta [omega_b], E_N [bits]")
    lines.append("t,delta,E_N")
    times = scan.grid.times
    for j, delta in enumerate(scan.delta_values):
        for k, t in enumerate(times):
            lines.append(f"{_fmt(t)},{_fmt(delta)},{_fmt(scan.surface[k, j])}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_sw_verification_csv(path, rows, meta: dict) -> None:
    """Closed-form vs numeric effective-Hamiltonian comparison table."""
    lines = _meta_lines("sw-verification", meta)
    lines.append("# columns: scenario, entry, closed_form, numeric, abs_diff [omega_b]")
    lines.append("scenario,entry,closed_form,numeric,abs_diff")
    for row in rows:
        lines.append(
            f"{row.scenario},{row.label},{_fmt(row.closed_form)},{_fmt(row.numeric)},{_fmt(row.abs_diff)}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_manifest(path, manifest: dict) -> None:
    Path(path).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_manifest(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
