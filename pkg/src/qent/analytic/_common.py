import math

import numpy as np

from ..core import CAUSTIC_DELTA
from ..errors import CausticTime, NegativeQuantumNumber, QuantumNumberTooLarge

#: Largest quantum number accepted by the eigenstate evaluators.  The
#: normalised Hermite-function recurrence does not overflow, so the cap only
#: bounds the cost of a single call.
N_MAX_HERMITE = 32768


def guard_caustic(omega, t, delta=CAUSTIC_DELTA):
    """Return sin(omega t), raising CausticTime when |sin(omega t)| <= delta."""
    s = math.sin(omega * t)
    if abs(s) <= delta:
        raise CausticTime(t, s)
    return s


def is_caustic(omega, t, delta=CAUSTIC_DELTA):
    return abs(math.sin(omega * t)) <= delta


def check_quantum_number(n):
    if int(n) != n:
        raise TypeError(f"quantum number must be an integer, got {n!r}")
    if n < 0:
        raise NegativeQuantumNumber(f"n must be >= 0, got {n}")
    if n > N_MAX_HERMITE:
        raise QuantumNumberTooLarge(f"n={n} exceeds {N_MAX_HERMITE}")
    return int(n)


def hermite_functions(n_max, xi):
    """Normalised Hermite functions phi_0..phi_{n_max} at `xi`.

    ``phi_n(xi) = H_n(xi) exp(-xi^2/2) / sqrt(2^n n! sqrt(pi))`` evaluated by
    the three-term recurrence on the normalised functions, so no intermediate
    H_n is ever formed.  Returns an array of shape ``(n_max + 1,) + xi.shape``.
    """
    xi = np.asarray(xi, dtype=float)
    out = np.empty((n_max + 1,) + xi.shape)
    out[0] = np.pi**-0.25 * np.exp(-0.5 * xi * xi)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * xi * out[0]
    for n in range(1, n_max):
        out[n + 1] = math.sqrt(2.0 / (n + 1)) * xi * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
    return out


def hermite_function(n, xi):
    return hermite_functions(n, xi)[n]
