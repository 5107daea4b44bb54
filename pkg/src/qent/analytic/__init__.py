"""Closed-form kernels, eigenstates, wave functions and densities."""
from ._common import N_MAX_HERMITE, hermite_functions
from .dho import (
    DriveCoefficients,
    damped_free_kernel,
    dho_aux,
    dho_drive_coefficients,
    dho_initial_state,
    dho_joint_entropy_closed,
    dho_kernel,
    dho_kernel_literal_assembly,
    dho_kernel_direct,
    dho_momentum_density,
    dho_phase_angle,
    dho_position_density,
    dho_wavefunction,
    eta2_sin2,
)
from .propagators import DampedFreePropagator, DhoPropagator, QuadraticForm, ShoPropagator
from .sho import (
    mehler_closed,
    mehler_kernel,
    sho_classical_action,
    sho_coherent_state,
    sho_eigenstate,
    sho_energy,
    sho_kernel,
    sho_momentum_density,
    sho_position_density,
)

__all__ = [
    "N_MAX_HERMITE", "hermite_functions",
    "DriveCoefficients", "damped_free_kernel", "dho_aux", "dho_drive_coefficients",
    "dho_initial_state", "dho_joint_entropy_closed", "dho_kernel", "dho_kernel_literal_assembly",
    "dho_kernel_direct", "dho_momentum_density", "dho_phase_angle", "dho_position_density",
    "dho_wavefunction", "eta2_sin2",
    "DampedFreePropagator", "DhoPropagator", "QuadraticForm", "ShoPropagator",
    "mehler_closed", "mehler_kernel", "sho_classical_action", "sho_coherent_state",
    "sho_eigenstate", "sho_energy", "sho_kernel", "sho_momentum_density", "sho_position_density",
]
