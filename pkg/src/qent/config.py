"""Run configuration: key=value file plus command-line overrides."""
from __future__ import annotations

import argparse
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import CAUSTIC_DELTA, OscillatorParams, validate_params
from .errors import ConfigParseError, ConstraintViolation, QentError
from .numeric.grid import TAIL_TOL

MODES = ("sho", "dho", "validate", "sweep")
SWEEP_DEFAULTS = {"omega": (0.1, 2.0, 0.1), "gamma": (0.1, 1.0, 0.1)}


def _float(s):
    v = float(s)
    if not math.isfinite(v):
        raise ValueError(f"not finite: {s!r}")
    return v


def _int(s):
    v = float(s)
    if v != int(v):
        raise ValueError(f"not an integer: {s!r}")
    return int(v)


def _sweep_var(s):
    s = s.strip().lower()
    if s in ("omega", "omega0"):
        return "omega"
    if s == "gamma":
        return "gamma"
    raise ValueError(f"sweep variable must be omega or gamma, got {s!r}")


def _range(s):
    parts = s.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected A:B:STEP, got {s!r}")
    return tuple(_float(x) for x in parts)


def _source(s):
    s = s.strip().lower()
    if s not in ("analytic", "kernel"):
        raise ValueError(f"source must be analytic or kernel, got {s!r}")
    return s


# key -> (parser, default)
KEYS = {
    "m": (_float, 1.0),
    "omega0": (_float, 1.0),
    "gamma": (_float, 0.0),
    "xbar": (_float, 0.0),
    "hbar": (_float, 1.0),
    "L": (_float, 12.0),
    "n": (_int, 2048),
    "t_start": (_float, 0.0),
    "t_stop": (_float, 10.0),
    "t_step": (_float, 0.01),
    "sweep": (_sweep_var, None),
    "sweep_range": (_range, None),
    "out": (str, None),
    "delta": (_float, CAUSTIC_DELTA),
    "tail_tol": (_float, TAIL_TOL),
    "source": (_source, "analytic"),
}
_ALIASES = {k.lower().replace("-", "_"): k for k in KEYS}


@dataclass(frozen=True)
class RunConfig:
    mode: str = "sho"
    params: OscillatorParams = field(default_factory=OscillatorParams)
    L: float = 12.0
    n: int = 2048
    t_start: float = 0.0
    t_stop: float = 10.0
    t_step: float = 0.01
    sweep: Optional[str] = None
    sweep_range: Optional[tuple] = None
    out: Optional[str] = None
    delta: float = CAUSTIC_DELTA
    tail_tol: float = TAIL_TOL
    source: str = "analytic"

    def times(self) -> np.ndarray:
        k = int(math.floor((self.t_stop - self.t_start) / self.t_step + 1e-9))
        return self.t_start + self.t_step * np.arange(k + 1)

    def sweep_values(self) -> np.ndarray:
        a, b, step = self.sweep_range
        k = int(math.floor((b - a) / step + 1e-9))
        return a + step * np.arange(k + 1)

    def as_dict(self) -> dict:
        p = self.params
        return {
            "mode": self.mode, "m": p.m, "omega0": p.omega0, "gamma": p.gamma, "xbar": p.xbar,
            "hbar": p.hbar, "L": self.L, "n": self.n, "t_start": self.t_start, "t_stop": self.t_stop,
            "t_step": self.t_step, "sweep": self.sweep,
            "sweep_range": list(self.sweep_range) if self.sweep_range else None,
            "delta": self.delta, "tail_tol": self.tail_tol, "source": self.source,
        }


def read_config_file(path) -> dict:
    """Parse `key = value` lines; `#` starts a comment."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigParseError(f"cannot read config file {path}: {exc}") from exc
    out = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError(f"{path}:{lineno}: expected key=value", line=lineno)
        key, val = (s.strip() for s in line.split("=", 1))
        canon = _ALIASES.get(key.lower().replace("-", "_"))
        if canon is None:
            raise ConfigParseError(f"{path}:{lineno}: unknown key {key!r}", line=lineno, key=key)
        try:
            out[canon] = KEYS[canon][0](val)
        except ValueError as exc:
            raise ConfigParseError(f"{path}:{lineno}: bad value for {key}: {exc}", line=lineno, key=key) from exc
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qent", description="Leipnik joint entropy of the SHO and DHO.")
    ap.add_argument("mode", choices=MODES)
    ap.add_argument("--config", metavar="FILE")
    for key in KEYS:
        flag = "--" + key.replace("_", "-")
        ap.add_argument(flag, dest=key, default=None, metavar=key.upper())
    return ap


def parse_config(argv=None) -> RunConfig:
    """Resolve defaults < config file < flags into a checked RunConfig.

    An empty argument list gives the default ``sho`` configuration.
    """
    argv = list(argv or ["sho"])
    ns = build_parser().parse_args(argv)
    values = {k: d for k, (_, d) in KEYS.items()}
    if ns.config:
        values.update(read_config_file(ns.config))
    for key, (conv, _) in KEYS.items():
        raw = getattr(ns, key)
        if raw is None:
            continue
        try:
            values[key] = conv(raw)
        except ValueError as exc:
            raise ConfigParseError(f"--{key.replace('_', '-')}: {exc}", key=key) from exc
    return _resolve(ns.mode, values)


def _resolve(mode, v) -> RunConfig:
    try:
        params = OscillatorParams(v["m"], v["omega0"], v["gamma"], v["hbar"], v["xbar"])
    except QentError as exc:
        raise ConstraintViolation(str(exc), cause=exc) from exc
    if v["t_step"] <= 0:
        raise ConstraintViolation("t_step must be > 0")
    if v["t_start"] < 0:
        raise ConstraintViolation("t_start must be >= 0")
    if v["t_stop"] <= v["t_start"]:
        raise ConstraintViolation("t_stop must exceed t_start")
    if not v["L"] > 0:
        raise ConstraintViolation("L must be > 0")
    n = v["n"]
    if n < 16 or n & (n - 1):
        raise ConstraintViolation(f"n must be a power of two >= 16, got {n}")
    for key in ("delta", "tail_tol"):
        if not v[key] > 0:
            raise ConstraintViolation(f"{key} must be > 0")
    sweep, rng = v["sweep"], v["sweep_range"]
    if mode == "sweep":
        if sweep is None:
            raise ConstraintViolation("sweep mode needs --sweep omega|gamma")
        rng = rng or SWEEP_DEFAULTS[sweep]
        a, b, step = rng
        if step <= 0 or b < a:
            raise ConstraintViolation("sweep range needs A <= B and STEP > 0")
    cfg = RunConfig(mode, params, v["L"], n, v["t_start"], v["t_stop"], v["t_step"], sweep, rng,
                    v["out"], v["delta"], v["tail_tol"], v["source"])
    try:
        validate_params(params, "dho")
        if mode == "sweep":
            for value in cfg.sweep_values():
                validate_params(sweep_params(cfg, value), "dho")
    except QentError as exc:
        raise ConstraintViolation(str(exc), cause=exc) from exc
    return cfg


def sweep_system(cfg: RunConfig) -> str:
    """A gamma sweep, or an omega sweep with damping, runs the DHO; otherwise the SHO."""
    return "dho" if cfg.sweep == "gamma" or cfg.params.gamma > 0 else "sho"


def sweep_params(cfg: RunConfig, value: float) -> OscillatorParams:
    if value <= 0 and cfg.sweep == "omega":
        raise ConstraintViolation(f"omega0 sweep value must be > 0, got {value!r}")
    if cfg.sweep == "omega":
        return cfg.params.replace(omega0=float(value))
    return cfg.params.replace(gamma=float(value))
