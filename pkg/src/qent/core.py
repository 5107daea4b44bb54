"""Domain types and parameter validation.

All types are immutable after construction.  Arrays held by them are marked
read-only so they can be shared between worker threads.

Units are natural by default (m = hbar = omega0 = 1); nothing here does
dimensional analysis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Literal, Optional

import numpy as np

from .errors import BadGridSpec, NonPositiveParameter, Overdamped

Space = Literal["position", "momentum"]

#: Times with |sin(omega t)| at or below this are treated as caustics.
CAUSTIC_DELTA = 1e-6

#: Leipnik lower bound ln(e/2) for one-dimensional pure states.
LEIPNIK_MIN = 1.0 - math.log(2.0)


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class OscillatorParams:
    """Physical constants for one run.

    Parameters
    ----------
    m : float
        Mass, > 0.
    omega0 : float
        Undamped angular frequency, > 0.
    gamma : float
        Damping factor (1/time), >= 0.  Enters the Caldirola-Kanai Lagrangian
        exp(gamma t) (m xdot^2/2 - m omega0^2 x^2/2 + j(t) x).
    hbar : float
        Reduced Planck constant, > 0.
    xbar : float
        Initial packet centre for the displaced (coherent) SHO state.  Any real
        value is accepted; large |xbar| needs a wider grid.
    """

    m: float = 1.0
    omega0: float = 1.0
    gamma: float = 0.0
    hbar: float = 1.0
    xbar: float = 0.0

    def __post_init__(self):
        for name in ("m", "omega0", "hbar"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise NonPositiveParameter(f"{name} must be > 0, got {v!r}")
        if not (math.isfinite(self.gamma) and self.gamma >= 0):
            raise NonPositiveParameter(f"gamma must be >= 0, got {self.gamma!r}")
        if not math.isfinite(self.xbar):
            raise NonPositiveParameter(f"xbar must be finite, got {self.xbar!r}")

    @property
    def omega(self) -> float:
        """Shifted frequency sqrt(omega0^2 - gamma^2/4); equals omega0 at gamma=0."""
        if self.gamma >= 2.0 * self.omega0:
            raise Overdamped(
                f"gamma={self.gamma} >= 2*omega0={2 * self.omega0}: not underdamped"
            )
        if self.gamma == 0.0:
            return self.omega0
        return math.sqrt(self.omega0**2 - 0.25 * self.gamma**2)

    def replace(self, **changes) -> "OscillatorParams":
        d = dict(m=self.m, omega0=self.omega0, gamma=self.gamma, hbar=self.hbar, xbar=self.xbar)
        d.update(changes)
        return OscillatorParams(**d)


def validate_params(p: OscillatorParams, mode: Literal["sho", "dho"] = "sho") -> OscillatorParams:
    """Check `p` for `mode` and return it unchanged.

    For ``mode="dho"`` the shifted frequency must be real, i.e. gamma < 2 omega0.
    Validation is idempotent: the returned object is `p` itself.
    """
    if mode not in ("sho", "dho"):
        raise ValueError(f"unknown mode {mode!r}")
    # re-run the constructor checks in case the instance was built via object.__new__
    OscillatorParams.__post_init__(p)
    if mode == "dho":
        p.omega  # raises Overdamped
    return p


def is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid:
    """Uniform periodic-style grid ``x_k = x_min + k dx`` for k < n_points.

    The conjugate momentum grid has spacing ``dp = 2 pi hbar / (n dx)`` and is
    centred the same way, ``p_k = -pi hbar/dx + k dp``.
    """

    x_min: float
    x_max: float
    n_points: int
    hbar: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)) or self.x_min >= self.x_max:
            raise BadGridSpec(f"need x_min < x_max, got [{self.x_min}, {self.x_max})")
        if int(self.n_points) != self.n_points or self.n_points < 16 or not is_power_of_two(int(self.n_points)):
            raise BadGridSpec(f"n_points must be a power of two >= 16, got {self.n_points!r}")
        if not self.hbar > 0:
            raise BadGridSpec("hbar must be > 0")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_points

    @property
    def dp(self) -> float:
        return 2.0 * math.pi * self.hbar / (self.n_points * self.dx)

    @property
    def p_min(self) -> float:
        return -math.pi * self.hbar / self.dx

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n_points)

    @property
    def p(self) -> np.ndarray:
        return self.p_min + self.dp * np.arange(self.n_points)

    def nodes(self, space: Space) -> np.ndarray:
        return self.x if space == "position" else self.p

    def spacing(self, space: Space) -> float:
        return self.dx if space == "position" else self.dp


@dataclass(frozen=True)
class WaveSample:
    """Complex amplitudes of psi(x, t) or its momentum transform on a grid."""

    grid: Grid
    values: np.ndarray
    space: Space = "position"
    time: float = 0.0

    def __post_init__(self):
        v = _frozen(self.values, complex)
        if v.shape != (self.grid.n_points,):
            raise BadGridSpec(f"values must have shape ({self.grid.n_points},), got {v.shape}")
        if self.space not in ("position", "momentum"):
            raise ValueError(f"bad space tag {self.space!r}")
        object.__setattr__(self, "values", v)

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes(self.space)

    @property
    def spacing(self) -> float:
        return self.grid.spacing(self.space)

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * self.spacing)

    def density(self) -> "DensityProfile":
        return DensityProfile.from_raw(self.grid, np.abs(self.values) ** 2, self.space)


@dataclass(frozen=True)
class DensityProfile:
    """Normalised non-negative density on a grid.

    `deficit` is the raw mass (grid integral) of the values before they were
    renormalised, so 1.0 means the source expression was already normalised.
    """

    grid: Grid
    values: np.ndarray
    deficit: float = 1.0
    space: Space = "position"

    def __post_init__(self):
        v = _frozen(self.values, float)
        if v.shape != (self.grid.n_points,):
            raise BadGridSpec(f"values must have shape ({self.grid.n_points},), got {v.shape}")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise ValueError("density values must be finite and >= 0")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_raw(cls, grid: Grid, raw, space: Space = "position", deficit: Optional[float] = None):
        raw = np.asarray(raw, dtype=float)
        mass = float(np.sum(raw) * grid.spacing(space))
        if not (mass > 0 and math.isfinite(mass)):
            raise ValueError(f"density has non-positive or non-finite mass {mass!r}")
        return cls(grid, raw / mass, mass if deficit is None else float(deficit), space)

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes(self.space)

    @property
    def spacing(self) -> float:
        return self.grid.spacing(self.space)

    def integral(self) -> float:
        return float(np.sum(self.values) * self.spacing)


@dataclass(frozen=True)
class DhoAux:
    """Auxiliary DHO functions at one time.

    Divergent members are NaN when `caustic_flag` is set; `eta2_sin2` (the
    caustic-safe product eta^2 sin^2(omega t)) is always finite.
    """

    t: float
    omega: float
    eta2: float
    eta2_sin2: float
    D: float
    A: complex
    A_prime: float
    N: float
    caustic_flag: bool


@dataclass(frozen=True)
class EntropyTrace:
    """Per-time entropy record; NaN marks an absent value.

    Columns: S_x, S_p, S_joint_numeric, S_joint_closed, deficit_x, deficit_p.
    `notes` holds a failure message for rows whose numeric entropy could not be
    computed for reasons other than a caustic.
    """

    system: str
    times: np.ndarray
    S_x: np.ndarray
    S_p: np.ndarray
    S_joint_numeric: np.ndarray
    S_joint_closed: np.ndarray
    deficit_x: np.ndarray
    deficit_p: np.ndarray
    caustic: np.ndarray
    notes: tuple = field(default=())

    COLUMNS = ("S_x", "S_p", "S_joint_numeric", "S_joint_closed", "deficit_x", "deficit_p")

    def __post_init__(self):
        t = _frozen(self.times, float)
        if t.ndim != 1 or np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        object.__setattr__(self, "times", t)
        for name in self.COLUMNS:
            col = _frozen(getattr(self, name), float)
            if col.shape != t.shape:
                raise ValueError(f"column {name} has wrong length")
            object.__setattr__(self, name, col)
        c = _frozen(self.caustic, bool)
        object.__setattr__(self, "caustic", c)
        if np.any(np.isfinite(self.S_joint_numeric[c])):
            raise ValueError("caustic rows must not carry numeric entropies")
        notes = tuple(self.notes) if self.notes else (None,) * len(t)
        object.__setattr__(self, "notes", notes)

    def __len__(self):
        return len(self.times)

    def column(self, name: str) -> np.ndarray:
        if name not in self.COLUMNS:
            raise KeyError(name)
        return getattr(self, name)


@dataclass(frozen=True)
class DriveForce:
    """External drive j(t) of the damped oscillator Lagrangian.

    ``DriveForce()`` is the zero drive.
    """

    func: Optional[Callable[[float], float]] = None
    name: str = "zero"

    @classmethod
    def zero(cls) -> "DriveForce":
        return cls()

    @classmethod
    def constant(cls, j0: float) -> "DriveForce":
        if j0 == 0:
            return cls()
        return cls(lambda t, j0=float(j0): j0, name=f"constant({j0!r})")

    @property
    def is_zero(self) -> bool:
        return self.func is None

    def __call__(self, t):
        if self.func is None:
            return 0.0 * np.asarray(t, dtype=float) if np.ndim(t) else 0.0
        return self.func(t)

    def shifted(self, t_start: float, scale: float = 1.0) -> "DriveForce":
        """Drive seen by an interval starting at `t_start`: ``scale * j(t_start + tau)``."""
        if self.func is None:
            return self
        f = self.func
        return DriveForce(lambda tau: scale * f(t_start + tau), name=f"{self.name}@{t_start!r}")
