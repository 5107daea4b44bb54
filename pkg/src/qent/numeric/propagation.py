"""Wave-function propagation by direct kernel summation.

``propagate`` evaluates ``psi(x, t) = sum_j K(x_j -> x; t) psi0(x_j) dx`` on
the grid, O(n^2).  Kernel families exposing ``form(t, t_start)`` go through
the compiled chirp sum; any other callable ``K(x0, x1, t)`` is evaluated
block-wise with numpy.
"""
from __future__ import annotations

import math

import numpy as np

from ..core import Grid, WaveSample
from ..errors import GridTooSmall, WrongSpace, ZeroTime
from . import _backend

#: Largest phase advance per grid step allowed in an integrand (8 points per oscillation).
MAX_PHASE_STEP = 2.0 * math.pi / 8.0
#: |omega t| window for composition checks.
COMPOSE_WINDOW = 5.0 * math.pi / 6.0

_SUPPORT_REL = 1e-10
_BLOCK = 256


def _support(values, x):
    a = np.abs(values)
    idx = np.nonzero(a > _SUPPORT_REL * a.max())[0]
    return x[idx[0]], x[idx[-1]]


def propagate(kernel, w0: WaveSample, t: float, t_start: float = 0.0,
              check_resolution: bool = True, nthreads=None) -> WaveSample:
    """Apply `kernel` for a duration `t` to the position sample `w0`.

    `t_start` is the absolute start time, used by time-dependent families.
    With ``check_resolution`` a quadratic-form kernel whose integrand advances
    by more than MAX_PHASE_STEP per grid step raises GridTooSmall.
    """
    if w0.space != "position":
        raise WrongSpace("propagate needs a position-space sample")
    g = w0.grid
    x = g.x
    psi = w0.values
    if hasattr(kernel, "form"):
        F = kernel.form(t, t_start)
        if check_resolution:
            a, b = _support(psi, x)
            grad = max(
                abs(2.0 * F.src2 * x0 + F.cross * x1 + F.src1)
                for x0 in (a, b) for x1 in (g.x_min, g.x_max)
            )
            if grad * g.dx > MAX_PHASE_STEP:
                raise GridTooSmall(
                    f"kernel under-resolved: phase step {grad * g.dx:.3f} rad per node "
                    f"(limit {MAX_PHASE_STEP:.3f}) at t={t!r}, t_start={t_start!r}"
                )
        phi = psi * np.exp(1j * (F.src2 * x * x + F.src1 * x))
        s = _backend.chirp_matvec(x, g.x_min, g.dx, phi, F.cross, nthreads)
        out = F.prefactor * np.exp(1j * (F.dest2 * x * x + F.dest1 * x + F.const)) * s * g.dx
    else:
        out = np.empty(g.n_points, dtype=complex)
        for start in range(0, g.n_points, _BLOCK):
            xs = x[start:start + _BLOCK]
            K = np.asarray(kernel(x[None, :], xs[:, None], t))
            out[start:start + _BLOCK] = np.sum(K * psi[None, :], axis=1) * g.dx
    return WaveSample(g, out, "position", w0.time + t)


def plateau_taper(x, grid: Grid, plateau: float = 0.5):
    """C-infinity window: 1 on the inner `plateau` fraction, 0 at the grid edge."""
    c = 0.5 * (grid.x_min + grid.x_max)
    half = 0.5 * (grid.x_max - grid.x_min)
    u = np.clip((np.abs(np.asarray(x, dtype=float) - c) - plateau * half) / ((1.0 - plateau) * half), 0.0, 1.0)

    def bump(v):
        safe = np.where(v > 0, v, 1.0)
        return np.where(v > 0, np.exp(-1.0 / safe), 0.0)

    return bump(1.0 - u) / (bump(1.0 - u) + bump(u))


DEFAULT_POINTS = ((0.0, 0.0), (0.5, -0.3), (1.0, 0.7), (-1.5, 1.2), (2.0, -2.0))


def _kernel_at(kernel, x0, x1, t, t_start):
    if hasattr(kernel, "form"):
        return kernel.form(t, t_start)(x0, x1)
    return kernel(x0, x1, t)


def kernel_compose(kernel, t1: float, t2: float, grid: Grid, points=DEFAULT_POINTS,
                   plateau: float = 0.5) -> float:
    """Max |int K(x1 -> x; t1) K(x0 -> x1; t2) dx1 - K(x0 -> x; t1 + t2)| over `points`.

    `points` are (x0, x) pairs.  The second leg starts at time t2, which
    matters for time-dependent families.  The integrand has constant modulus,
    so the integral is regularised by :func:`plateau_taper`.
    """
    if t1 == 0 or t2 == 0:
        raise ZeroTime("composition needs t1, t2 != 0 (the t=0 kernel is a delta function)")
    w = getattr(kernel, "omega", None)
    if w:
        for tt in (t1, t2):
            if abs(w * tt) > COMPOSE_WINDOW:
                raise ValueError(f"|omega t|={abs(w * tt):.3f} outside the composition window")
    x1 = grid.x
    win = plateau_taper(x1, grid, plateau)
    if hasattr(kernel, "form"):
        F1 = kernel.form(t1, t2)
        F2 = kernel.form(t2, 0.0)
        for x0, x in points:
            for edge in (grid.x_min, grid.x_max):
                grad = abs(2.0 * (F1.src2 + F2.dest2) * edge + F1.cross * x + F2.cross * x0 + F1.src1 + F2.dest1)
                if grad * grid.dx > MAX_PHASE_STEP:
                    raise GridTooSmall(f"composition integrand under-resolved ({grad * grid.dx:.3f} rad/node)")
    resid = 0.0
    for x0, x in points:
        integrand = _kernel_at(kernel, x1, x, t1, t2) * _kernel_at(kernel, x0, x1, t2, 0.0) * win
        lhs = np.sum(integrand) * grid.dx
        rhs = complex(_kernel_at(kernel, x0, x, t1 + t2, 0.0))
        resid = max(resid, abs(lhs - rhs))
    return float(resid)


class KernelEvolver:
    """Evolve a t=0 sample to arbitrary times with well-conditioned kernel steps.

    Checkpoints are kept at multiples of T = (pi/2)/omega.  A state at time t
    is one step from the checkpoint k T with omega (t - k T) in [pi/4, 3pi/4);
    for omega t < pi/4 the step runs backwards from T.  Every step therefore
    has |sin(omega tau)| >= 1/sqrt(2), far from the caustics.
    """

    def __init__(self, family, initial: WaveSample, nthreads=None):
        if not hasattr(family, "form"):
            raise TypeError("KernelEvolver needs a kernel family with form(t, t_start)")
        if initial.space != "position" or initial.time != 0.0:
            raise ValueError("initial sample must be a position-space sample at t=0")
        self.family = family
        self.omega = float(family.omega)
        if not self.omega > 0:
            raise ValueError("KernelEvolver needs an oscillating family (omega > 0)")
        self.period = 0.5 * math.pi / self.omega
        self.nthreads = nthreads
        self._checkpoints = [initial]

    def _checkpoint(self, k):
        while len(self._checkpoints) <= k:
            j = len(self._checkpoints)
            prev = self._checkpoints[-1]
            nxt = propagate(self.family, prev, self.period, t_start=(j - 1) * self.period, nthreads=self.nthreads)
            self._checkpoints.append(WaveSample(nxt.grid, nxt.values, "position", j * self.period))
        return self._checkpoints[k]

    def at(self, t: float) -> WaveSample:
        theta = self.omega * t
        k = int(math.floor((theta - 0.25 * math.pi) / (0.5 * math.pi)))
        if k < 0:
            k = 1
        base = self._checkpoint(k)
        tau = t - k * self.period
        out = propagate(self.family, base, tau, t_start=k * self.period, nthreads=self.nthreads)
        return WaveSample(out.grid, out.values, "position", t)
