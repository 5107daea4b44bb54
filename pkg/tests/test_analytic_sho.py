import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from qent.analytic import (
    hermite_functions,
    mehler_closed,
    mehler_kernel,
    sho_classical_action,
    sho_coherent_state,
    sho_eigenstate,
    sho_energy,
    sho_kernel,
    sho_momentum_density,
    sho_position_density,
    damped_free_kernel,
)
from qent.core import OscillatorParams
from qent.errors import CausticTime, NegativeQuantumNumber, QuantumNumberTooLarge

P = OscillatorParams()


def test_action_zero_endpoints():
    assert sho_classical_action(0.0, 0.0, 0.7, P) == 0.0


def test_action_quarter_period():
    assert sho_classical_action(0.0, 1.0, math.pi / 4, P) == pytest.approx(0.5, rel=1e-15)


def test_action_caustic():
    with pytest.raises(CausticTime):
        sho_classical_action(0.0, 1.0, math.pi, P)


def test_kernel_modulus_half_period():
    assert abs(sho_kernel(0.0, 0.0, math.pi / 2, P)) == pytest.approx(math.sqrt(1 / (2 * math.pi)), rel=1e-14)


def test_kernel_caustic():
    with pytest.raises(CausticTime):
        sho_kernel(0.0, 0.0, 2 * math.pi, P)


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(0.05, 3.09))
def test_kernel_modulus_independent_of_points(x0, x1, t):
    expect = math.sqrt(1.0 / (2 * math.pi * abs(math.sin(t))))
    assert abs(sho_kernel(x0, x1, t, P)) == pytest.approx(expect, rel=1e-12)


@pytest.mark.parametrize("t", [0.3, 1.0, 2.0, 3.0])
def test_kernel_phase_at_origin(t):
    k = sho_kernel(0.0, 0.0, t, P)
    assert k / abs(k) == pytest.approx(np.exp(-1j * math.pi / 4), abs=1e-14)
    assert k == pytest.approx(mehler_closed(0.0, 0.0, t, P), abs=1e-14)


def test_kernel_small_omega_matches_damped_free_limit():
    p = OscillatorParams(omega0=1e-4)
    t = 0.5
    free = damped_free_kernel(0.2, -0.4, t, OscillatorParams(gamma=1e-8))
    k = sho_kernel(0.2, -0.4, t, p)
    assert abs(k - free) / abs(free) < 1e-6


def test_energy():
    assert sho_energy(0, P) == 0.5
    assert sho_energy(3, OscillatorParams(omega0=2.0)) == 7.0
    with pytest.raises(NegativeQuantumNumber):
        sho_energy(-1, P)


def test_eigenstate_values():
    assert sho_eigenstate(0, 0.0, P) == pytest.approx(math.pi**-0.25, rel=1e-15)
    assert sho_eigenstate(1, 0.0, P) == 0.0
    with pytest.raises(QuantumNumberTooLarge):
        sho_eigenstate(10**6, 0.0, P)


@pytest.mark.parametrize("n", [0, 1, 5, 12, 20])
def test_eigenstate_normalised(n):
    val, _ = quad(lambda x: sho_eigenstate(n, x, P) ** 2, -20, 20, limit=200)
    assert val == pytest.approx(1.0, abs=1e-8)


def test_hermite_recurrence_matches_scipy():
    from scipy.special import eval_hermite

    xi = np.linspace(-4, 4, 17)
    h = hermite_functions(10, xi)
    for n in range(11):
        ref = eval_hermite(n, xi) * np.exp(-xi**2 / 2) / math.sqrt(2**n * math.factorial(n) * math.sqrt(math.pi))
        assert np.allclose(h[n], ref, atol=1e-13)


def test_eigenstates_orthonormal_on_grid(grid12):
    x = grid12.x
    h = np.array([sho_eigenstate(n, x, P) for n in range(8)])
    gram = h @ h.T * grid12.dx
    assert np.allclose(gram, np.eye(8), atol=1e-12)


def test_mehler_single_term():
    t = 0.8
    val = mehler_kernel(0.0, 0.0, t, P, 0, 1e-3)
    assert val == pytest.approx(np.exp(-0.5j * t) / math.sqrt(math.pi), abs=1e-15)


def test_mehler_requires_positive_eps():
    with pytest.raises(ValueError):
        mehler_kernel(0.0, 0.0, 1.0, P, 10, 0.0)


@pytest.mark.parametrize("pt", [(0.2, -0.1), (0.0, 0.0), (0.5, 0.3)])
def test_mehler_converges_to_regularised_closed_form(pt):
    t = math.pi / 3
    closed = mehler_closed(*pt, t, P, 1e-3)
    errs = [abs(mehler_kernel(*pt, t, P, n, 1e-3) - closed) for n in (2000, 8000, 16000)]
    assert errs[-1] < 1e-8
    assert errs[0] > errs[1] > errs[2]
    # the regularisation itself is O(eps)
    assert abs(closed - sho_kernel(*pt, t, P)) < 1e-3


def test_mehler_strong_damping_converges_fast():
    t = 1.1
    closed = mehler_closed(0.3, -0.6, t, P, 0.5)
    assert abs(mehler_kernel(0.3, -0.6, t, P, 80, 0.5) - closed) < 1e-14


def test_coherent_state_reduces_to_ground_state():
    x = np.linspace(-4, 4, 33)
    assert np.allclose(sho_coherent_state(x, 0.0, P), sho_eigenstate(0, x, P), atol=1e-15)


@given(st.floats(-3, 3), st.floats(0, 20), st.floats(0.3, 3))
def test_coherent_density_matches_position_density(xbar, t, w):
    p = OscillatorParams(omega0=w, xbar=xbar)
    x = np.linspace(-6, 6, 41)
    assert np.allclose(np.abs(sho_coherent_state(x, t, p)) ** 2, sho_position_density(x, t, p), atol=1e-13)


def test_coherent_state_normalised():
    p = OscillatorParams(xbar=1.3)
    re = quad(lambda x: abs(sho_coherent_state(x, 0.9, p)) ** 2, -15, 15)[0]
    assert re == pytest.approx(1.0, abs=1e-9)


def test_position_density_values():
    p = OscillatorParams(xbar=1.0)
    assert sho_position_density(math.cos(0.4), 0.4, p) == pytest.approx(1 / math.sqrt(math.pi))
    assert sho_position_density(0.0, 0.0, p) == pytest.approx(math.exp(-1) / math.sqrt(math.pi), rel=1e-14)
    assert quad(lambda x: sho_position_density(x, 2.0, p), -15, 15)[0] == pytest.approx(1.0, abs=1e-9)


def test_momentum_density_values():
    assert sho_momentum_density(0.0, 0.3, P) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)


@given(st.floats(-3, 3), st.floats(0, 10))
def test_momentum_density_forms_agree_and_normalise(xbar, t):
    p = OscillatorParams(xbar=xbar)
    q = np.linspace(-8, 8, 41)
    assert np.allclose(sho_momentum_density(q, t, p, literal=True), sho_momentum_density(q, t, p), atol=1e-12)
    assert quad(lambda v: sho_momentum_density(v, t, p), -20, 20)[0] == pytest.approx(1.0, abs=1e-9)


def test_densities_even_for_centred_packet():
    x = np.linspace(-5, 5, 21)
    assert np.allclose(sho_position_density(x, 1.3, P), sho_position_density(-x, 1.3, P))
    assert np.allclose(sho_momentum_density(x, 1.3, P), sho_momentum_density(-x, 1.3, P))
