"""CSV data behind the encoded-signal, density, phasor and window plots."""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .encoding import CVParams, encode, encoded_momentum, grid_sample
from .measurement import optimal_delta
from .wavefunction import pdf, phasor_angles, wavefunction

PANEL_STRINGS = {"a": "0000", "b": "0011", "c": "0101", "d": "0110"}
FIG_P = 1.0
FIG_N = 4


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path: Path | str, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    return path


def position_grid(half_width_steps: int, step: float) -> np.ndarray:
    """Symmetric grid k * step, k = -n..n, holding x = 0 exactly."""
    return np.arange(-half_width_steps, half_width_steps + 1) * step


def reproduce_figures(outdir: Path | str) -> list[Path]:
    outdir = Path(outdir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {outdir}: {exc}") from exc
    params = CVParams(FIG_N, FIG_P)
    written = []

    for panel, z in PANEL_STRINGS.items():
        p, value = grid_sample(encoded_momentum(z, params), 256)
        sign = encode(z, params, p).astype(int)
        written.append(write_csv(outdir / f"fig4_{panel}.csv", ("p", "encoded", "value"), zip(p, sign, value)))

    x = position_grid(400, math.pi / 100)
    for panel, z in PANEL_STRINGS.items():
        density = pdf(wavefunction(z, params))(x)
        written.append(write_csv(outdir / f"fig6_{panel}.csv", ("x", "pdf"), zip(x, density)))

    rows = []
    for panel, xv in (("a", math.pi / 2), ("b", math.pi / 4)):
        angles = phasor_angles(8, FIG_P, xv)
        for j, angle in enumerate(angles, start=1):
            rows.append((panel, xv, j, angle, math.cos(angle), math.sin(angle)))
    written.append(write_csv(outdir / "fig7_phasors.csv", ("panel", "x", "j", "angle", "re", "im"), rows))

    delta = optimal_delta(FIG_P)
    x = position_grid(200, math.pi / 100)
    columns = [pdf(wavefunction(z, params))(x) for z in PANEL_STRINGS.values()]
    inside = np.abs(x) <= delta
    header = ("x", *(f"pdf_{z}" for z in PANEL_STRINGS.values()), "in_window")
    written.append(write_csv(outdir / "fig8_window.csv", header, zip(x, *columns, inside)))
    return written
