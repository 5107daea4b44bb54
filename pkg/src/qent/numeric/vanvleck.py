"""Semiclassical prefactor from a finite-difference mixed derivative of the action."""
from __future__ import annotations

import math

import numpy as np


def mixed_derivative_fd(action, x0, x1, t, h):
    """Central-difference d^2 S / dx0 dx1 with step `h` (second order)."""
    if not h > 0:
        raise ValueError("h must be > 0")
    s = action
    return (
        s(x0 + h, x1 + h, t) - s(x0 + h, x1 - h, t) - s(x0 - h, x1 + h, t) + s(x0 - h, x1 - h, t)
    ) / (4.0 * h * h)


def default_step(x0, x1):
    return 1e-4 * (1.0 + max(abs(x0), abs(x1)))


def van_vleck_prefactor_fd(action, x0, x1, t, h=None, hbar=1.0):
    """sqrt((i / 2 pi hbar) d^2 S/dx0 dx1), principal branch.

    `action(x0, x1, t)` must raise CausticTime itself where it is singular.
    """
    if h is None:
        h = default_step(x0, x1)
    d2 = float(mixed_derivative_fd(action, x0, x1, t, h))
    if not math.isfinite(d2):
        raise ArithmeticError("non-finite mixed derivative")
    return complex(np.sqrt(1j / (2.0 * math.pi * hbar) * d2))
