"""Closed forms for the simple harmonic oscillator.

Kernel arguments follow the convention ``K(x0 -> x1; t)``: `x0` is the source
point at time 0 and `x1` the destination at time t.  All functions broadcast
over array-valued positions; times are scalars.

The square root in the kernel prefactor is taken on the principal branch.  That
is the correct phase for 0 < omega t < pi; past the first caustic the Maslov
phase is not tracked, which changes only a global phase.
"""
from __future__ import annotations

import math

import numpy as np

from ..core import CAUSTIC_DELTA, OscillatorParams
from ._common import check_quantum_number, guard_caustic, hermite_function, hermite_functions


def sho_classical_action(x0, x1, t, p: OscillatorParams, delta=CAUSTIC_DELTA):
    """Action of the classical path from (x0, 0) to (x1, t)."""
    w = p.omega0
    s = guard_caustic(w, t, delta)
    x0 = np.asarray(x0, dtype=float)
    x1 = np.asarray(x1, dtype=float)
    return p.m * w / (2.0 * s) * ((x0**2 + x1**2) * math.cos(w * t) - 2.0 * x0 * x1)


def sho_kernel(x0, x1, t, p: OscillatorParams, delta=CAUSTIC_DELTA):
    """Feynman kernel of the SHO.

    ``sqrt(m w / (2 pi i hbar sin wt)) * exp(-(m w / 2 i hbar) [(x^2 + x0^2) cot wt - 2 x0 x / sin wt])``
    """
    w = p.omega0
    s = guard_caustic(w, t, delta)
    x0 = np.asarray(x0, dtype=float)
    x1 = np.asarray(x1, dtype=float)
    pref = np.sqrt(p.m * w / (2.0 * math.pi * p.hbar * 1j * s))
    cot = math.cos(w * t) / s
    bracket = (x1**2 + x0**2) * cot - 2.0 * x0 * x1 / s
    return pref * np.exp(-(p.m * w / (2j * p.hbar)) * bracket)


def sho_energy(n, p: OscillatorParams):
    n = check_quantum_number(n)
    return p.hbar * p.omega0 * (n + 0.5)


def sho_eigenstate(n, x, p: OscillatorParams):
    """Normalised Hermite-Gaussian eigenstate psi_n(x)."""
    n = check_quantum_number(n)
    k = math.sqrt(p.m * p.omega0 / p.hbar)
    return math.sqrt(k) * hermite_function(n, k * np.asarray(x, dtype=float))


def mehler_kernel(x0, x1, t, p: OscillatorParams, n_max: int, eps: float):
    """Truncated spectral sum of the SHO kernel.

    ``sum_{n<=n_max} exp(-i t E_n / hbar) exp(-eps omega n) psi_n(x0) psi_n(x1)``

    The factor exp(-eps omega n) makes the infinite series absolutely
    convergent; its limit is :func:`mehler_closed` at the same `eps`, which
    tends to :func:`sho_kernel` as eps -> 0.  Convergence in n_max needs
    n_max >> 1/(eps omega).
    """
    if not eps > 0:
        raise ValueError("eps must be > 0")
    n_max = check_quantum_number(n_max)
    w = p.omega0
    k = math.sqrt(p.m * w / p.hbar)
    x0 = np.asarray(x0, dtype=float)
    x1 = np.asarray(x1, dtype=float)
    x0, x1 = np.broadcast_arrays(x0, x1)
    h0 = hermite_functions(n_max, k * x0)
    h1 = hermite_functions(n_max, k * x1)
    n = np.arange(n_max + 1)
    weights = np.exp(-1j * w * t * (n + 0.5)) * np.exp(-eps * w * n)
    weights = weights.reshape((-1,) + (1,) * x0.ndim)
    return k * np.sum(weights * h0 * h1, axis=0)


def mehler_closed(x0, x1, t, p: OscillatorParams, eps: float = 0.0, delta=CAUSTIC_DELTA):
    """Mehler's formula summed in closed form at z = exp(-i omega t - eps omega).

    With eps = 0 this is the SHO kernel on the principal branch (0 < wt < pi).
    """
    w = p.omega0
    if eps == 0.0:
        guard_caustic(w, t, delta)
    k = math.sqrt(p.m * w / p.hbar)
    x = k * np.asarray(x0, dtype=float)
    y = k * np.asarray(x1, dtype=float)
    z = np.exp(-1j * w * t - eps * w)
    one_m_z2 = 1.0 - z * z
    expo = (4.0 * x * y * z - (x * x + y * y) * (1.0 + z * z)) / (2.0 * one_m_z2)
    return k / math.sqrt(math.pi) * np.exp(-0.5j * w * t) / np.sqrt(one_m_z2) * np.exp(expo)


def sho_coherent_state(x, t, p: OscillatorParams):
    """Displaced ground state propagated to time t (centre follows xbar cos wt)."""
    w = p.omega0
    k = math.sqrt(p.m * w / p.hbar)
    a = k * np.asarray(x, dtype=float)
    ab = k * p.xbar
    ph = np.exp(-1j * w * t)
    expo = -0.25 * ab**2 - 0.5 * a**2 - 0.5j * w * t - 0.25 * ab**2 * ph**2 + a * ab * ph
    return (p.m * w / (math.pi * p.hbar)) ** 0.25 * np.exp(expo)


def sho_position_density(x, t, p: OscillatorParams):
    w = p.omega0
    c = p.m * w / p.hbar
    x = np.asarray(x, dtype=float)
    return math.sqrt(c / math.pi) * np.exp(-c * (x - p.xbar * math.cos(w * t)) ** 2)


def sho_momentum_density(p_val, t, p: OscillatorParams, literal: bool = False):
    """Momentum density of the coherent state.

    By default the completed-square form: a Gaussian centred at
    ``-m w xbar sin wt`` with variance ``m w hbar / 2``.  ``literal=True``
    evaluates the expanded exponent term by term instead; the two agree
    algebraically but the literal form loses precision for large xbar.
    """
    w = p.omega0
    mwh = p.m * w * p.hbar
    q = np.asarray(p_val, dtype=float)
    if literal:
        expo = (
            -q**2 / mwh
            + p.m * w * p.xbar**2 / (2.0 * p.hbar) * (math.cos(2.0 * w * t) - 1.0)
            - 2.0 * q * p.xbar / p.hbar * math.sin(w * t)
        )
    else:
        centre = -p.m * w * p.xbar * math.sin(w * t)
        expo = -((q - centre) ** 2) / mwh
    return math.sqrt(1.0 / (mwh * math.pi)) * np.exp(expo)
