"""Differential and joint (Leipnik) entropies, traces and the envelope diagnostic.

Entropies are in nats.  Grid integrals are plain sums times the spacing
(trapezoid rule on a periodic grid), which is spectrally accurate for the
smooth, decaying densities used here.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np

from .analytic import (
    DhoPropagator,
    ShoPropagator,
    dho_initial_state,
    dho_joint_entropy_closed,
    dho_momentum_density,
    dho_position_density,
    dho_wavefunction,
    sho_coherent_state,
    sho_momentum_density,
    sho_position_density,
)
from .analytic._common import is_caustic
from .core import (
    CAUSTIC_DELTA,
    LEIPNIK_MIN,
    DensityProfile,
    EntropyTrace,
    Grid,
    OscillatorParams,
    WaveSample,
    validate_params,
)
from .errors import CausticTime, NotNormalized, QentError, TooFewPoints
from .numeric import KernelEvolver, check_tails, thread_count, to_momentum
from .numeric.grid import TAIL_TOL

#: Density values below this are dropped from entropy sums (0 ln 0 := 0).
UNDERFLOW = 1e-300
NORM_TOL = 1e-6


@dataclass(frozen=True)
class EntropyRecord:
    S_x: float
    S_p: float
    S_joint: float
    deficit_x: float = 1.0
    deficit_p: float = 1.0
    source: Literal["numeric", "closed_form"] = "numeric"


def _plogp_sum(values):
    v = np.asarray(values, dtype=float)
    v = v[v > UNDERFLOW]
    return float(np.sum(v * np.log(v)))


def differential_entropy(d: DensityProfile, tail_tol: Optional[float] = TAIL_TOL, norm_tol: float = NORM_TOL) -> float:
    """-sum rho ln rho * spacing for a normalised density.

    ``tail_tol=None`` disables the grid-edge alarm (for densities with
    compact support that legitimately reach the grid ends).
    """
    mass = d.integral()
    if abs(mass - 1.0) > norm_tol:
        raise NotNormalized(f"density integrates to {mass!r}")
    if tail_tol is not None:
        check_tails(d, tail_tol)
    return -_plogp_sum(d.values) * d.spacing


def joint_entropy_numeric(pos: DensityProfile, mom: DensityProfile, p: OscillatorParams,
                          tail_tol: Optional[float] = TAIL_TOL) -> EntropyRecord:
    """S_x + S_p - ln(2 pi hbar) for one degree of freedom."""
    sx = differential_entropy(pos, tail_tol)
    sp = differential_entropy(mom, tail_tol)
    return EntropyRecord(sx, sp, sx + sp - math.log(2.0 * math.pi * p.hbar), pos.deficit, mom.deficit, "numeric")


def leipnik_density(pos: DensityProfile, mom: DensityProfile) -> np.ndarray:
    """Product phase-space density g[i, j] = rho_x(x_i) rho_p(p_j)."""
    return np.multiply.outer(pos.values, mom.values)


def phase_space_entropy(g, dx: float, dp: float, hbar: float = 1.0) -> float:
    """-int int g ln(h g) dx dp with h = 2 pi hbar, by direct 2-D summation."""
    g = np.asarray(g, dtype=float)
    return -_plogp_sum(g) * dx * dp - float(np.sum(g)) * dx * dp * math.log(2.0 * math.pi * hbar)


def sho_joint_entropy_closed(t, p: OscillatorParams) -> float:
    """ln(e/2) + (4 m omega / hbar) xbar^2 sin^2(omega t)."""
    w = p.omega0
    return LEIPNIK_MIN + 4.0 * p.m * w / p.hbar * p.xbar**2 * math.sin(w * t) ** 2


def leipnik_bound_margin(S_j: float) -> float:
    return S_j - LEIPNIK_MIN


# --- traces -----------------------------------------------------------------

System = Literal["sho", "dho"]


def _wave_analytic(system, t, p, grid, delta):
    if system == "sho":
        return sho_coherent_state(grid.x, t, p)
    return dho_wavefunction(0, grid.x, t, p, delta)


def numeric_record(w: WaveSample, p: OscillatorParams, tail_tol=TAIL_TOL,
                   deficits=(1.0, 1.0)) -> EntropyRecord:
    """Joint entropy of a sampled wave function via discrete Fourier transform."""
    pos = DensityProfile.from_raw(w.grid, np.abs(w.values) ** 2, "position", deficits[0])
    mom_w = to_momentum(WaveSample(w.grid, w.values, "position", w.time))
    mom = DensityProfile.from_raw(w.grid, np.abs(mom_w.values) ** 2, "momentum", deficits[1])
    return joint_entropy_numeric(pos, mom, p, tail_tol)


def _literal_deficits(system, t, p, grid, delta):
    if system == "sho":
        dx = float(np.sum(sho_position_density(grid.x, t, p)) * grid.dx)
        dp = float(np.sum(sho_momentum_density(grid.p, t, p, literal=True)) * grid.dp)
        return dx, dp
    _, dx = dho_position_density(0.0, t, p, delta=delta)
    _, dp = dho_momentum_density(0.0, t, p, delta=delta)
    return dx, dp


def _closed(system, t, p, delta):
    if system == "sho":
        return sho_joint_entropy_closed(t, p)
    return dho_joint_entropy_closed(t, p, delta)


def entropy_trace(
    system: System,
    times: Sequence[float],
    p: OscillatorParams,
    grid: Grid,
    mode: Literal["numeric", "closed", "both"] = "both",
    source: Literal["analytic", "kernel"] = "analytic",
    delta: float = CAUSTIC_DELTA,
    tail_tol: Optional[float] = TAIL_TOL,
    workers: Optional[int] = None,
) -> EntropyTrace:
    """Numeric and/or closed-form joint entropy at each time.

    Caustic times (|sin omega t| <= delta) are flagged and carry no numeric
    entropy.  Per-time failures (GridTooSmall, ...) are recorded in `notes`
    and leave the row's numeric cells empty.

    ``source="analytic"`` samples the closed-form wave function;
    ``source="kernel"`` evolves the t=0 state with the kernel instead.
    """
    if system not in ("sho", "dho"):
        raise ValueError(f"unknown system {system!r}")
    if mode not in ("numeric", "closed", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    if source not in ("analytic", "kernel"):
        raise ValueError(f"unknown source {source!r}")
    validate_params(p, system)
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) == 0 or np.any(np.diff(times) <= 0) or times[0] < 0:
        raise ValueError("times must be non-negative and strictly increasing")
    omega = p.omega0 if system == "sho" else p.omega
    n = len(times)
    nan = float("nan")
    cols = {k: np.full(n, nan) for k in EntropyTrace.COLUMNS}
    caustic = np.array([is_caustic(omega, t, delta) for t in times])
    notes: list = [None] * n

    evolver = None
    if source == "kernel" and mode != "closed":
        x = grid.x
        if system == "sho":
            fam = ShoPropagator(p.replace(xbar=p.xbar), delta)
            init = sho_coherent_state(x, 0.0, p)
        else:
            fam = DhoPropagator(p, delta=delta)
            init = dho_initial_state(0, x, p)
        evolver = KernelEvolver(fam, WaveSample(grid, init, "position", 0.0))

    def row(i):
        t = float(times[i])
        out = {}
        note = None
        if mode in ("closed", "both"):
            try:
                out["S_joint_closed"] = _closed(system, t, p, delta)
            except CausticTime:
                pass
        if caustic[i]:
            return out, note
        try:
            out["deficit_x"], out["deficit_p"] = _literal_deficits(system, t, p, grid, delta)
        except QentError as exc:
            note = f"{type(exc).__name__}: {exc}"
        if mode in ("numeric", "both"):
            try:
                if evolver is not None:
                    w = evolver.at(t)
                else:
                    w = WaveSample(grid, _wave_analytic(system, t, p, grid, delta), "position", t)
                rec = numeric_record(w, p, tail_tol)
                out.update(S_x=rec.S_x, S_p=rec.S_p, S_joint_numeric=rec.S_joint)
            except QentError as exc:
                note = f"{type(exc).__name__}: {exc}"
        return out, note

    if evolver is not None:
        # checkpoints are built in time order
        results = [row(i) for i in range(n)]
    else:
        nw = workers or thread_count()
        if nw > 1 and n > 1:
            with ThreadPoolExecutor(max_workers=nw) as ex:
                results = list(ex.map(row, range(n)))
        else:
            results = [row(i) for i in range(n)]

    for i, (vals, note) in enumerate(results):
        for k, v in vals.items():
            cols[k][i] = v
        notes[i] = note
    return EntropyTrace(system, times, caustic=caustic, notes=tuple(notes), **cols)


# --- envelope ---------------------------------------------------------------

@dataclass(frozen=True)
class Envelope:
    points: tuple  # ((t, value), ...)
    non_decreasing: bool
    first_violation: Optional[tuple] = None  # ((t_a, v_a), (t_b, v_b))


def _segment_maxima(t, v):
    # collapse runs of equal values, then keep interior runs above both neighbours
    runs = []
    i = 0
    n = len(v)
    while i < n:
        j = i
        while j + 1 < n and v[j + 1] == v[i]:
            j += 1
        runs.append((i, j))
        i = j + 1
    if len(runs) == 1:
        i, j = runs[0]
        return [(float(t[i]), float(v[i]))]
    out = []
    for r in range(1, len(runs) - 1):
        i, j = runs[r]
        if v[i] > v[runs[r - 1][0]] and v[i] > v[runs[r + 1][0]]:
            if i == j:
                # parabolic vertex through the three samples
                t0, t1, t2 = t[i - 1], t[i], t[i + 1]
                y0, y1, y2 = v[i - 1], v[i], v[i + 1]
                den = (t0 - t1) * (t0 - t2) * (t1 - t2)
                a = (t2 * (y1 - y0) + t1 * (y0 - y2) + t0 * (y2 - y1)) / den
                b = (t2 * t2 * (y0 - y1) + t1 * t1 * (y2 - y0) + t0 * t0 * (y1 - y2)) / den
                c = (t1 * t2 * (t1 - t2) * y0 + t2 * t0 * (t2 - t0) * y1 + t0 * t1 * (t0 - t1) * y2) / den
                if a < 0:
                    tv = -b / (2.0 * a)
                    out.append((float(tv), float(c - b * b / (4.0 * a))))
                    continue
            out.append((float(t[i]), float(v[i])))
    return out


def envelope_of(times, values, tol: float = 1e-9) -> Envelope:
    """Local maxima of `values` (3-point test, parabolic refinement).

    Non-finite entries split the series into independent segments.  The
    verdict tolerates decreases up to ``tol * max(1, |v|)``.
    """
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    finite = np.isfinite(v)
    if int(finite.sum()) < 3:
        raise TooFewPoints("envelope needs at least 3 finite rows")
    pts = []
    i = 0
    n = len(v)
    while i < n:
        if not finite[i]:
            i += 1
            continue
        j = i
        while j < n and finite[j]:
            j += 1
        pts.extend(_segment_maxima(t[i:j], v[i:j]))
        i = j
    violation = None
    for a, b in zip(pts, pts[1:]):
        if b[1] < a[1] - tol * max(1.0, abs(a[1])):
            violation = (a, b)
            break
    return Envelope(tuple(pts), violation is None, violation)


def envelope(trace: EntropyTrace, column: str = "S_joint_closed", tol: float = 1e-9) -> Envelope:
    return envelope_of(trace.times, trace.column(column), tol)
