"""Leipnik joint entropy of the simple and damped harmonic oscillator.

Closed-form kernels, wave functions and entropies live in :mod:`qent.analytic`
and :mod:`qent.entropy`; :mod:`qent.numeric` re-derives them by kernel
propagation, discrete Fourier transform and quadrature.
"""
from .core import (
    CAUSTIC_DELTA,
    LEIPNIK_MIN,
    DensityProfile,
    DhoAux,
    DriveForce,
    EntropyTrace,
    Grid,
    OscillatorParams,
    WaveSample,
    validate_params,
)
from .errors import *  # noqa: F401,F403
from .numeric import backend_name

__version__ = "0.1.0"
