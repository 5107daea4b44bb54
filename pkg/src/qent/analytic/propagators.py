"""Kernel families with an explicit quadratic phase form.

Every kernel in this package has the shape

    K(x0 -> x1) = C exp(i (dest2 x1^2 + src2 x0^2 + cross x1 x0 + dest1 x1 + src1 x0 + const))

so propagation can factor the phase and only the cross term stays inside the
O(n^2) sum.  Families are callables ``K(x0, x1, t)`` and additionally expose
``form(t, t_start)``.

The Caldirola-Kanai Lagrangian depends explicitly on time: over an interval
starting at t_start it equals exp(gamma t_start) times the Lagrangian of an
oscillator with mass m exp(gamma t_start) and drive exp(gamma t_start) j(t_start + .).
``form(t, t_start)`` applies that substitution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core import CAUSTIC_DELTA, DriveForce, OscillatorParams
from ..errors import ZeroDamping, ZeroTime
from ._common import guard_caustic
from .dho import dho_drive_coefficients


@dataclass(frozen=True)
class QuadraticForm:
    prefactor: complex
    dest2: float
    src2: float
    cross: float
    dest1: float = 0.0
    src1: float = 0.0
    const: float = 0.0

    def phase(self, x0, x1):
        x0 = np.asarray(x0, dtype=float)
        x1 = np.asarray(x1, dtype=float)
        return (
            self.dest2 * x1 * x1 + self.src2 * x0 * x0 + self.cross * x1 * x0
            + self.dest1 * x1 + self.src1 * x0 + self.const
        )

    def __call__(self, x0, x1):
        return self.prefactor * np.exp(1j * self.phase(x0, x1))


class _Family:
    delta = CAUSTIC_DELTA

    def __call__(self, x0, x1, t, t_start=0.0):
        return self.form(t, t_start)(x0, x1)

    @property
    def omega(self) -> float:
        raise NotImplementedError


class ShoPropagator(_Family):
    def __init__(self, p: OscillatorParams, delta=CAUSTIC_DELTA):
        self.p = p
        self.delta = delta

    @property
    def omega(self):
        return self.p.omega0

    def form(self, t, t_start=0.0) -> QuadraticForm:
        p = self.p
        w = p.omega0
        s = guard_caustic(w, t, self.delta)
        k = p.m * w / p.hbar
        pref = complex(np.sqrt(k / (2.0 * math.pi * 1j * s)))
        half_cot = 0.5 * k * math.cos(w * t) / s
        return QuadraticForm(pref, half_cot, half_cot, -k / s)

    def __repr__(self):
        return f"ShoPropagator({self.p!r})"


class DhoPropagator(_Family):
    def __init__(self, p: OscillatorParams, drive: Optional[DriveForce] = None, delta=CAUSTIC_DELTA):
        self.p = p
        self.drive = drive if drive is not None else DriveForce.zero()
        self.delta = delta

    @property
    def omega(self):
        return self.p.omega

    def form(self, t, t_start=0.0) -> QuadraticForm:
        p = self.p
        scale = math.exp(p.gamma * t_start)
        ps = p.replace(m=p.m * scale) if t_start else p
        drive = self.drive.shifted(t_start, scale) if t_start else self.drive
        co = dho_drive_coefficients(t, drive, ps, self.delta)
        w = ps.omega
        s = math.sin(w * t)
        pref = complex(np.sqrt(ps.m * w * math.exp(0.5 * p.gamma * t) / (2.0 * math.pi * 1j * p.hbar * s)))
        h = 0.5 * ps.m / p.hbar
        return QuadraticForm(pref, h * co.a, h * co.b, 2.0 * h * co.c, 2.0 * h * co.d, 2.0 * h * co.e, -h * co.f)

    def __repr__(self):
        return f"DhoPropagator({self.p!r}, drive={self.drive.name})"


class DampedFreePropagator(_Family):
    def __init__(self, p: OscillatorParams):
        if p.gamma == 0:
            raise ZeroDamping("gamma=0")
        self.p = p

    @property
    def omega(self):
        return 0.0

    def form(self, t, t_start=0.0) -> QuadraticForm:
        if t == 0:
            raise ZeroTime("t=0")
        p = self.p
        g = p.gamma
        m = p.m * math.exp(g * t_start)
        kappa = g * m * math.exp(0.5 * g * t) / (4.0 * p.hbar * math.sinh(0.5 * g * t))
        pref = complex(np.sqrt(kappa / (math.pi * 1j)))
        return QuadraticForm(pref, kappa, kappa, -2.0 * kappa)

    def __repr__(self):
        return f"DampedFreePropagator({self.p!r})"
