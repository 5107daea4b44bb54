"""Closed forms for the damped (Caldirola-Kanai) harmonic oscillator.

Two choices here are deliberate:

* eta^2(t) uses ``(gamma/omega) cot(omega t)`` as its middle term.  This is
  the value produced by propagating the t=0 Gaussian with the kernel; the
  ``cos`` variant is kept as ``eta_form="cos"``.
* the kernel assembled from the drive coefficients uses ``b x0^2`` and
  ``c = -omega exp(gamma t/2) / sin(omega t)`` so that it reduces to the
  zero-drive kernel exactly.  :func:`dho_kernel_literal_assembly` keeps the
  alternative ``2 b x0^2`` assembly for comparison.

Literal density normalisations (|N|^2 prefactors) do not integrate to one;
density functions return the renormalised values together with the literal
mass ("deficit").
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from ..core import CAUSTIC_DELTA, DhoAux, DriveForce, OscillatorParams
from ..errors import CausticTime, ZeroDamping, ZeroTime
from ..numeric.quadrature import ABS_TOL, REL_TOL, integrate_signed
from ._common import check_quantum_number, guard_caustic, hermite_function, is_caustic

EtaForm = Literal["cot", "cos"]


def damped_free_kernel(x0, x1, t, p: OscillatorParams):
    """Kernel of the damped free particle (Lagrangian exp(gamma t) m xdot^2 / 2)."""
    if t == 0:
        raise ZeroTime("damped free kernel is a delta function at t=0")
    if p.gamma == 0:
        raise ZeroDamping("gamma=0: use the free-particle limit of sho_kernel")
    g = p.gamma
    kappa = g * p.m * math.exp(0.5 * g * t) / (4.0 * p.hbar * math.sinh(0.5 * g * t))
    pref = np.sqrt(kappa / (math.pi * 1j))
    d = np.asarray(x1, dtype=float) - np.asarray(x0, dtype=float)
    return pref * np.exp(1j * kappa * d * d)


@dataclass(frozen=True)
class DriveCoefficients:
    a: float
    b: float
    c: float
    d: float = 0.0
    e: float = 0.0
    f: float = 0.0
    quad_error: float = 0.0


def dho_drive_coefficients(
    t, drive: Optional[DriveForce], p: OscillatorParams, delta=CAUSTIC_DELTA,
    tol=ABS_TOL, rel_tol=REL_TOL,
) -> DriveCoefficients:
    """Coefficients of the driven DHO kernel phase.

    The phase is ``(m / 2 hbar) (a x^2 + b x0^2 + 2 c x x0 + 2 d x + 2 e x0 - f)``.
    a, b, c are closed form; d, e, f are quadratures over the drive and are
    exactly zero for the zero drive.
    """
    w = p.omega
    g = p.gamma
    s = guard_caustic(w, t, delta)
    cot = math.cos(w * t) / s
    egt = math.exp(g * t)
    a = (-0.5 * g + w * cot) * egt
    b = 0.5 * g + w * cot
    c = -w * math.exp(0.5 * g * t) / s
    if drive is None or drive.is_zero:
        return DriveCoefficients(a, b, c)

    kw = dict(tol=tol, rel_tol=rel_tol)
    rd = integrate_signed(lambda u: drive(u) * math.exp(0.5 * g * u) * math.sin(w * u), 0.0, t, **kw)
    re_ = integrate_signed(lambda u: drive(u) * math.exp(0.5 * g * u) * math.sin(w * (t - u)), 0.0, t, **kw)

    def outer(u):
        inner = integrate_signed(
            lambda v: drive(v) * math.exp(g * v) * math.sin(w * v), 0.0, u, **kw
        ).value
        return drive(u) * math.exp(0.5 * g * u) * math.sin(w * (t - u)) * inner

    rf = integrate_signed(outer, 0.0, t, **kw)
    d = egt / (p.m * s) * rd.value
    e = re_.value / (p.m * s)
    f = rf.value / (p.m**2 * w)
    err = max(abs(egt / (p.m * s)) * rd.est_error, re_.est_error / abs(p.m * s), rf.est_error / (p.m**2 * w))
    return DriveCoefficients(a, b, c, d, e, f, err)


def _dho_prefactor(t, p, s):
    w = p.omega
    return np.sqrt(p.m * w * math.exp(0.5 * p.gamma * t) / (2.0 * math.pi * 1j * p.hbar * s))


def dho_kernel(x0, x1, t, p: OscillatorParams, drive: Optional[DriveForce] = None, delta=CAUSTIC_DELTA):
    """DHO kernel assembled from :func:`dho_drive_coefficients`."""
    co = dho_drive_coefficients(t, drive, p, delta)
    s = math.sin(p.omega * t)
    x0 = np.asarray(x0, dtype=float)
    x = np.asarray(x1, dtype=float)
    phase = co.a * x**2 + co.b * x0**2 + 2.0 * co.c * x * x0 + 2.0 * co.d * x + 2.0 * co.e * x0 - co.f
    return _dho_prefactor(t, p, s) * np.exp(0.5j * p.m / p.hbar * phase)


def dho_kernel_literal_assembly(x0, x1, t, p: OscillatorParams, delta=CAUSTIC_DELTA):
    """Zero-drive kernel from the alternative coefficient assembly (diagnostic only).

    Uses ``2 b x0^2`` and ``c = -omega exp(gamma t) / sin(omega t)``; this does
    not reduce to :func:`dho_kernel_direct` and is not unitary.
    """
    w = p.omega
    g = p.gamma
    s = guard_caustic(w, t, delta)
    cot = math.cos(w * t) / s
    a = (-0.5 * g + w * cot) * math.exp(g * t)
    b = 0.5 * g + w * cot
    c = -w / s * math.exp(g * t)
    x0 = np.asarray(x0, dtype=float)
    x = np.asarray(x1, dtype=float)
    phase = a * x**2 + 2.0 * b * x0**2 + 2.0 * x * x0 * c
    return _dho_prefactor(t, p, s) * np.exp(0.5j * p.m / p.hbar * phase)


def dho_kernel_direct(x0, x1, t, p: OscillatorParams, delta=CAUSTIC_DELTA):
    """Zero-drive DHO kernel written out directly in x, x0."""
    w = p.omega
    g = p.gamma
    s = guard_caustic(w, t, delta)
    x0 = np.asarray(x0, dtype=float)
    x = np.asarray(x1, dtype=float)
    egt = math.exp(g * t)
    inner = g * (x0**2 - egt * x**2) + (2.0 * w / s) * (
        (x0**2 + x**2 * egt) * math.cos(w * t) - 2.0 * math.exp(0.5 * g * t) * x * x0
    )
    return _dho_prefactor(t, p, s) * np.exp(1j * p.m / (4.0 * p.hbar) * inner)


def eta2_sin2(t, p: OscillatorParams, eta_form: EtaForm = "cot") -> float:
    """Caustic-safe product eta^2(t) sin^2(omega t)."""
    w = p.omega
    g = p.gamma
    s = math.sin(w * t)
    c = math.cos(w * t)
    if eta_form == "cot":
        mid = s * c
    elif eta_form == "cos":
        mid = c * s * s
    else:
        raise ValueError(f"unknown eta_form {eta_form!r}")
    return 1.0 + (g / w) * mid + (g * g / (4.0 * w * w)) * s * s


def dho_aux(t, p: OscillatorParams, delta=CAUSTIC_DELTA, eta_form: EtaForm = "cot") -> DhoAux:
    """omega, eta^2, D, A, A', N at time t.

    At a caustic the divergent members are NaN and `caustic_flag` is set.
    """
    w = p.omega
    g = p.gamma
    q = eta2_sin2(t, p, eta_form)
    if is_caustic(w, t, delta):
        nan = float("nan")
        return DhoAux(t, w, nan, q, nan, complex(nan, nan), nan, nan, True)
    s = math.sin(w * t)
    cot = math.cos(w * t) / s
    eta2 = q / (s * s)
    pre = p.m * w / (2.0 * p.hbar) * math.exp(g * t)
    a_prime = pre / q
    u = g / (2.0 * w)
    A = complex(a_prime, pre * (u - cot + (u + cot) / q))
    D = math.sqrt(p.m * w / p.hbar) * math.exp(0.5 * g * t) / (math.sqrt(eta2) * s)
    N = (p.m * w / (math.pi * p.hbar)) ** 0.25 * math.exp(0.25 * g * t) / (math.sqrt(eta2) * math.sqrt(abs(s)))
    return DhoAux(t, w, eta2, q, D, A, a_prime, N, False)


def _aux_or_raise(t, p, delta, eta_form):
    aux = dho_aux(t, p, delta, eta_form)
    if aux.caustic_flag:
        raise CausticTime(t, math.sin(p.omega * t))
    return aux


def dho_initial_state(n, x, p: OscillatorParams):
    """t=0 state N0 H_n(alpha0 x) exp(-alpha0^2 x^2 / 2), alpha0^2 = m omega / hbar."""
    n = check_quantum_number(n)
    a0 = math.sqrt(p.m * p.omega / p.hbar)
    return math.sqrt(a0) * hermite_function(n, a0 * np.asarray(x, dtype=float))


def dho_phase_angle(t, p: OscillatorParams, delta=CAUSTIC_DELTA):
    """arccot(gamma/2omega + cot omega t) on the (0, pi) branch."""
    w = p.omega
    s = guard_caustic(w, t, delta)
    u = p.gamma / (2.0 * w) + math.cos(w * t) / s
    return 0.5 * math.pi - math.atan(u)


def dho_wavefunction(n, x, t, p: OscillatorParams, delta=CAUSTIC_DELTA, eta_form: EtaForm = "cot"):
    """n-th DHO state at time t (zero drive), started from :func:`dho_initial_state`.

    Carries the literal N(t) prefactor, so its norm is the literal mass
    reported by :func:`dho_position_density`, not 1.
    """
    n = check_quantum_number(n)
    aux = _aux_or_raise(t, p, delta, eta_form)
    x = np.asarray(x, dtype=float)
    phase = -(n + 0.5) * dho_phase_angle(t, p, delta)
    # H_n(Dx) exp(-A' x^2) / sqrt(2^n n!) == pi^(1/4) phi_n(Dx) since D^2 = 2 A'
    amp = aux.N * math.pi**0.25 * hermite_function(n, aux.D * x)
    return amp * np.exp(-1j * aux.A.imag * x * x + 1j * phase)


def dho_position_density(x, t, p: OscillatorParams, literal=False, delta=CAUSTIC_DELTA, eta_form: EtaForm = "cot"):
    """Ground-state position density.

    Returns ``(values, deficit)``: the renormalised Gaussian
    ``sqrt(2A'/pi) exp(-2A' x^2)`` (or the literal ``|N|^2 exp(-2A' x^2)`` when
    ``literal=True``) and the literal mass ``|N|^2 sqrt(pi / 2A')``.
    """
    aux = _aux_or_raise(t, p, delta, eta_form)
    x = np.asarray(x, dtype=float)
    ap = aux.A_prime
    deficit = aux.N**2 * math.sqrt(math.pi / (2.0 * ap))
    shape = np.exp(-2.0 * ap * x * x)
    if literal:
        return aux.N**2 * shape, deficit
    return math.sqrt(2.0 * ap / math.pi) * shape, deficit


def dho_momentum_density(p_val, t, p: OscillatorParams, literal=False, delta=CAUSTIC_DELTA, eta_form: EtaForm = "cot"):
    """Ground-state momentum density, ``(values, deficit)`` as for position.

    Only the exponent ``-(p^2 / 2 hbar^2) A'/|A|^2`` is trusted; the literal
    prefactor ``|N|^2 / sqrt(2 |A|^2 hbar)`` sets the reported mass.
    """
    aux = _aux_or_raise(t, p, delta, eta_form)
    q = np.asarray(p_val, dtype=float)
    absA2 = abs(aux.A) ** 2
    kappa = aux.A_prime / (2.0 * p.hbar**2 * absA2)
    lit_pref = aux.N**2 / math.sqrt(2.0 * absA2 * p.hbar)
    deficit = lit_pref * math.sqrt(math.pi / kappa)
    shape = np.exp(-kappa * q * q)
    if literal:
        return lit_pref * shape, deficit
    return math.sqrt(kappa / math.pi) * shape, deficit


def dho_joint_entropy_closed(t, p: OscillatorParams, delta=CAUSTIC_DELTA, eta_form: EtaForm = "cot"):
    """Closed-form DHO joint entropy, evaluated term by term.

    ``|N|^2 sqrt(pi/2A') [(ln|N|^2 - 1/2) - 1/2 sqrt(1/(2|A|^2)) (ln(|N|^2/(2|A|^2)) - 1/2)] - ln 2pi``
    """
    aux = _aux_or_raise(t, p, delta, eta_form)
    n2 = aux.N**2
    absA2 = abs(aux.A) ** 2
    bracket = (math.log(n2) - 0.5) - 0.5 * math.sqrt(1.0 / (2.0 * absA2)) * (
        math.log(n2 / (2.0 * absA2)) - 0.5
    )
    return n2 * math.sqrt(math.pi / (2.0 * aux.A_prime)) * bracket - math.log(2.0 * math.pi)
