"""Adaptive quadrature on a finite interval.

Thin contract around QUADPACK (``scipy.integrate.quad``): the caller gets the
value, the error estimate and the evaluation count, and a QuadratureFailure
when the estimate misses the requested tolerance.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

from scipy import integrate as _spi

from ..errors import QuadratureFailure

ABS_TOL = 1e-10
REL_TOL = 1e-8


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    est_error: float
    evaluations: int


def integrate(f, a, b, tol=ABS_TOL, rel_tol=REL_TOL, limit=200) -> QuadratureResult:
    """Integrate real `f` over [a, b] to ``max(tol, rel_tol*|value|)``."""
    if not a < b:
        raise ValueError(f"need a < b, got a={a!r}, b={b!r}")
    if not (tol > 0 and rel_tol > 0):
        raise ValueError("tolerances must be > 0")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _spi.IntegrationWarning)
        value, err, info = _spi.quad(f, a, b, epsabs=tol, epsrel=rel_tol, limit=limit, full_output=1)[:3]
    err = abs(float(err))
    if err > max(tol, rel_tol * abs(value)):
        raise QuadratureFailure(
            f"quadrature over [{a}, {b}] reached est_error={err:.3e}, "
            f"requested {max(tol, rel_tol * abs(value)):.3e}"
        )
    return QuadratureResult(float(value), err, int(info["neval"]))


def integrate_signed(f, a, b, **kw) -> QuadratureResult:
    """Like :func:`integrate` but accepts b <= a (oriented integral)."""
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    if a < b:
        return integrate(f, a, b, **kw)
    r = integrate(f, b, a, **kw)
    return QuadratureResult(-r.value, r.est_error, r.evaluations)
