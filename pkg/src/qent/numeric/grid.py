"""Grid construction and the position <-> momentum transform."""
from __future__ import annotations

import math

import numpy as np

from ..core import DensityProfile, Grid, WaveSample
from ..errors import BadGridSpec, GridTooSmall, WrongSpace

#: Fraction of the grid (split between both ends) watched by the tail alarm.
EDGE_FRACTION = 0.05
TAIL_TOL = 1e-8


def build_grid(x_half_width: float, n_points: int, hbar: float = 1.0) -> Grid:
    """Symmetric grid [-L, L) with `n_points` nodes (a power of two >= 16)."""
    if not (x_half_width > 0 and math.isfinite(x_half_width)):
        raise BadGridSpec(f"half width must be > 0, got {x_half_width!r}")
    return Grid(-float(x_half_width), float(x_half_width), n_points, hbar)


def _phases(grid: Grid):
    k = np.arange(grid.n_points)
    # x_j = x_min + j dx, p_k = p_min + k dp, dx dp / hbar = 2 pi / n
    pre = np.exp(-1j * (grid.p_min + k * grid.dp) * grid.x_min / grid.hbar)
    chirp = np.exp(-1j * grid.p_min * grid.dx / grid.hbar * k)
    return pre, chirp


def to_momentum(w: WaveSample) -> WaveSample:
    """Continuum-normalised transform psi~(p) = int dx exp(-ipx/hbar) psi(x) / sqrt(2 pi hbar).

    Exact DFT of the samples; Parseval holds to rounding.
    """
    if w.space != "position":
        raise WrongSpace(f"expected a position-space sample, got {w.space}")
    g = w.grid
    pre, chirp = _phases(g)
    vals = g.dx / math.sqrt(2.0 * math.pi * g.hbar) * pre * np.fft.fft(w.values * chirp)
    return WaveSample(g, vals, "momentum", w.time)


def to_position(w: WaveSample) -> WaveSample:
    """Inverse of :func:`to_momentum`."""
    if w.space != "momentum":
        raise WrongSpace(f"expected a momentum-space sample, got {w.space}")
    g = w.grid
    pre, chirp = _phases(g)
    vals = math.sqrt(2.0 * math.pi * g.hbar) / g.dx * np.conj(chirp) * np.fft.ifft(w.values * np.conj(pre))
    return WaveSample(g, vals, "position", w.time)


def edge_mass(values, spacing) -> float:
    """Mass in the outer EDGE_FRACTION of the grid relative to the total."""
    v = np.asarray(values, dtype=float)
    n = v.shape[0]
    k = max(1, int(round(0.5 * EDGE_FRACTION * n)))
    total = float(np.sum(v)) * spacing
    if total <= 0:
        return float("inf")
    return float(np.sum(v[:k]) + np.sum(v[-k:])) * spacing / total


def check_tails(d: DensityProfile, tol: float = TAIL_TOL) -> DensityProfile:
    """Raise GridTooSmall when more than `tol` of the mass sits near the grid edge."""
    frac = edge_mass(d.values, d.spacing)
    if frac > tol:
        raise GridTooSmall(
            f"{d.space} density has {frac:.3e} of its mass in the outer "
            f"{100 * EDGE_FRACTION:g}% of the grid (limit {tol:g})"
        )
    return d
