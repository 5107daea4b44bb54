"""Grids, transforms, kernel propagation, quadrature and finite-difference oracles."""
from ._backend import backend_name, thread_count
from .grid import build_grid, check_tails, edge_mass, to_momentum, to_position
from .propagation import KernelEvolver, kernel_compose, plateau_taper, propagate
from .quadrature import QuadratureResult, integrate
from .vanvleck import mixed_derivative_fd, van_vleck_prefactor_fd

__all__ = [
    "backend_name", "thread_count", "build_grid", "check_tails", "edge_mass", "to_momentum",
    "to_position", "KernelEvolver", "kernel_compose", "plateau_taper", "propagate",
    "QuadratureResult", "integrate", "mixed_derivative_fd", "van_vleck_prefactor_fd",
]
