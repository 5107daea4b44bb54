"""``qent`` command-line front end.

Subcommands: ``sho`` and ``dho`` write an entropy trace as CSV, ``sweep``
writes a long-format surface over omega0 or gamma, ``validate`` runs the
consistency checks and writes a JSON report.

Exit codes: 0 success, 1 validation failure, 2 configuration error,
3 runtime or I/O error.
"""
from __future__ import annotations

import io
import json
import math
import sys

import numpy as np

from . import analytic as an
from .config import RunConfig, parse_config, sweep_params, sweep_system
from .core import LEIPNIK_MIN, DensityProfile, EntropyTrace, WaveSample
from .entropy import entropy_trace, envelope, numeric_record, sho_joint_entropy_closed
from .errors import ConfigParseError, ConstraintViolation, QentError, TooFewPoints
from .numeric import (
    KernelEvolver,
    build_grid,
    check_tails,
    kernel_compose,
    to_momentum,
    to_position,
    van_vleck_prefactor_fd,
)

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2, 3

TRACE_HEADER = ("t", "S_x", "S_p", "S_joint_numeric", "S_joint_closed", "deficit_x", "deficit_p", "caustic")
SWEEP_HEADER = ("sweep_value", "t", "S_joint_closed", "S_joint_numeric")


def fmt(v) -> str:
    """17 significant digits; empty for absent (NaN) values."""
    v = float(v)
    return "" if not math.isfinite(v) else format(v, ".17g")


def _grid(cfg: RunConfig):
    return build_grid(cfg.L, cfg.n, cfg.params.hbar)


def run_trace(cfg: RunConfig, system: str) -> EntropyTrace:
    return entropy_trace(system, cfg.times(), cfg.params, _grid(cfg), "both", cfg.source, cfg.delta, cfg.tail_tol)


def _envelope_line(trace, column):
    try:
        env = envelope(trace, column)
    except TooFewPoints:
        return f"# envelope {column}: too few finite rows"
    if env.non_decreasing:
        return f"# envelope {column}: non-decreasing ({len(env.points)} maxima)"
    (ta, va), (tb, vb) = env.first_violation
    return (f"# envelope {column}: decreasing ({len(env.points)} maxima), first violation "
            f"t={fmt(ta)} S={fmt(va)} -> t={fmt(tb)} S={fmt(vb)}")


def trace_csv(trace: EntropyTrace) -> str:
    buf = io.StringIO()
    buf.write(",".join(TRACE_HEADER) + "\n")
    cols = [trace.column(c) for c in EntropyTrace.COLUMNS]
    for i, t in enumerate(trace.times):
        cells = [fmt(t)] + [fmt(c[i]) for c in cols] + ["1" if trace.caustic[i] else "0"]
        buf.write(",".join(cells) + "\n")
    buf.write(_envelope_line(trace, "S_joint_closed") + "\n")
    buf.write(_envelope_line(trace, "S_joint_numeric") + "\n")
    for t, note in zip(trace.times, trace.notes):
        if note:
            buf.write(f"# numeric failure at t={fmt(t)}: {note}\n")
    return buf.getvalue()


def cmd_sho(cfg: RunConfig) -> tuple:
    return trace_csv(run_trace(cfg, "sho")), EXIT_OK


def cmd_dho(cfg: RunConfig) -> tuple:
    return trace_csv(run_trace(cfg, "dho")), EXIT_OK


def cmd_sweep(cfg: RunConfig) -> tuple:
    system = sweep_system(cfg)
    grid = _grid(cfg)
    times = cfg.times()
    buf = io.StringIO()
    buf.write(",".join(SWEEP_HEADER) + "\n")
    failures = []
    for value in cfg.sweep_values():
        p = sweep_params(cfg, value)
        tr = entropy_trace(system, times, p, grid, "both", cfg.source, cfg.delta, cfg.tail_tol)
        for i, t in enumerate(tr.times):
            buf.write(f"{fmt(value)},{fmt(t)},{fmt(tr.S_joint_closed[i])},{fmt(tr.S_joint_numeric[i])}\n")
        failures += [(value, t, n) for t, n in zip(tr.times, tr.notes) if n]
    for value, t, note in failures:
        buf.write(f"# numeric failure at {cfg.sweep}={fmt(value)} t={fmt(t)}: {note}\n")
    return buf.getvalue(), EXIT_OK


# --- validation ---------------------------------------------------------------

GAMMA_CHECK = 0.1
GAMMA_LIMIT = 1e-8
MEHLER_POINTS = ((0.2, -0.1), (0.0, 0.0), (0.5, 0.3))
MEHLER_EPS = 1e-3
MEHLER_N_REPORT = 80
MEHLER_N_HARD = 16384


def _num(v):
    if isinstance(v, complex):
        return [_num(v.real), _num(v.imag)]
    v = float(v)
    return v if math.isfinite(v) else None


def _check_mehler(cfg, grid):
    p = cfg.params.replace(xbar=0.0)
    t = (math.pi / 3.0) / p.omega0
    exact = max(abs(an.mehler_closed(a, b, t, p) - an.sho_kernel(a, b, t, p)) for a, b in MEHLER_POINTS)
    reg = max(abs(an.mehler_kernel(a, b, t, p, MEHLER_N_HARD, MEHLER_EPS) - an.mehler_closed(a, b, t, p, MEHLER_EPS))
              for a, b in MEHLER_POINTS)
    short = max(abs(an.mehler_kernel(a, b, t, p, MEHLER_N_REPORT, MEHLER_EPS) - an.sho_kernel(a, b, t, p))
                for a, b in MEHLER_POINTS)
    return {
        "passed": exact < 1e-12 and reg < 1e-6,
        "closed_vs_kernel_max_abs": exact,
        f"partial_sum_n{MEHLER_N_HARD}_vs_regularised_closed_max_abs": reg,
        f"partial_sum_n{MEHLER_N_REPORT}_vs_kernel_max_abs": short,
        "eps": MEHLER_EPS,
    }


def _check_van_vleck(cfg, grid):
    p = cfg.params.replace(xbar=0.0)
    t = (math.pi / 3.0) / p.omega0
    action = lambda a, b, tt: an.sho_classical_action(a, b, tt, p, cfg.delta)  # noqa: E731
    err = 0.0
    for a, b in MEHLER_POINTS:
        fd = van_vleck_prefactor_fd(action, a, b, t, hbar=p.hbar)
        k = an.sho_kernel(a, b, t, p, cfg.delta)
        err = max(err, abs(abs(fd) - abs(k)), abs(fd - k / np.exp(1j * action(a, b, t) / p.hbar)))
    return {"passed": err < 1e-6, "max_abs": err}


def _check_compose_sho(cfg, grid):
    p = cfg.params.replace(xbar=0.0)
    t = (math.pi / 6.0) / p.omega0
    r = kernel_compose(an.ShoPropagator(p, cfg.delta), t, t, grid)
    return {"passed": r < 1e-5, "residual": r}


def _dho_params(cfg):
    g = cfg.params.gamma if cfg.params.gamma > 0 else GAMMA_CHECK
    return cfg.params.replace(gamma=g, xbar=0.0)


def _check_compose_dho(cfg, grid):
    p = _dho_params(cfg)
    t = (math.pi / 6.0) / p.omega
    r = kernel_compose(an.DhoPropagator(p, delta=cfg.delta), t, t, grid)
    return {"passed": r < 1e-4, "residual": r, "gamma": p.gamma}


def _sample_times(cfg, omega, k=10):
    # deterministic, away from caustics: omega t in (0.1, pi - 0.1) + j pi
    u = np.linspace(0.1, math.pi - 0.1, k)
    return u / omega


def _check_parseval(cfg, grid):
    p = cfg.params
    err = rt = 0.0
    for t in _sample_times(cfg, p.omega0):
        w = WaveSample(grid, an.sho_coherent_state(grid.x, t, p), "position", t)
        m = to_momentum(w)
        err = max(err, abs(w.norm2() - m.norm2()))
        rt = max(rt, float(np.max(np.abs(to_position(m).values - w.values))))
    return {"passed": err < 1e-10 and rt < 1e-10, "norm_max_abs": err, "round_trip_max_abs": rt}


def _check_momentum_fourier(cfg, grid):
    p = cfg.params
    err = 0.0
    for t in _sample_times(cfg, p.omega0):
        w = WaveSample(grid, an.sho_coherent_state(grid.x, t, p), "position", t)
        rho = np.abs(to_momentum(w).values) ** 2
        check_tails(DensityProfile.from_raw(grid, np.abs(w.values) ** 2, "position"), cfg.tail_tol)
        check_tails(DensityProfile.from_raw(grid, rho, "momentum"), cfg.tail_tol)
        err = max(err, float(np.max(np.abs(rho - an.sho_momentum_density(grid.p, t, p)))))
    return {"passed": err < 1e-7, "max_abs": err}


def _check_kernel_assembly(cfg, grid):
    p = _dho_params(cfg)
    rng = np.random.default_rng(7)
    rel = alt = 0.0
    for _ in range(20):
        a, b = rng.uniform(-3, 3, 2)
        t = rng.uniform(0.1, math.pi - 0.1) / p.omega
        k_direct = an.dho_kernel_direct(a, b, t, p, cfg.delta)
        rel = max(rel, abs(an.dho_kernel(a, b, t, p, None, cfg.delta) - k_direct) / abs(k_direct))
        alt = max(alt, abs(an.dho_kernel_literal_assembly(a, b, t, p, cfg.delta) - k_direct) / abs(k_direct))
    return {"passed": rel < 1e-12, "max_rel": rel, "literal_assembly_max_rel": alt, "gamma": p.gamma}


def _phase_aligned_error(a, b):
    """max |a/|a| - e^{i phi} b/|b|| with phi fitted, for L2-normalised a and b."""
    a = a / math.sqrt(np.sum(np.abs(a) ** 2))
    b = b / math.sqrt(np.sum(np.abs(b) ** 2))
    ph = np.vdot(b, a)
    ph = ph / abs(ph)
    return float(np.max(np.abs(a - ph * b)))


def _check_dho_propagation(cfg, grid):
    p = _dho_params(cfg)
    x = grid.x
    ev = KernelEvolver(an.DhoPropagator(p, delta=cfg.delta), WaveSample(grid, an.dho_initial_state(0, x, p), "position", 0.0))
    err = alt = 0.0
    for t in _sample_times(cfg, p.omega, 4):
        w = ev.at(t).values
        err = max(err, _phase_aligned_error(w, an.dho_wavefunction(0, x, t, p, cfg.delta)))
        alt = max(alt, _phase_aligned_error(w, an.dho_wavefunction(0, x, t, p, cfg.delta, "cos")))
    return {"passed": err < 1e-5, "max_abs": err, "cos_eta_max_abs": alt, "gamma": p.gamma}


def _check_gamma_zero(cfg, grid):
    ps = cfg.params.replace(gamma=0.0, xbar=0.0)
    pd = cfg.params.replace(gamma=GAMMA_LIMIT, xbar=0.0)
    x, pg = grid.x, grid.p
    dens = kern = ent = 0.0
    for t in _sample_times(cfg, ps.omega0, 5):
        rx, _ = an.dho_position_density(x, t, pd, delta=cfg.delta)
        rp, _ = an.dho_momentum_density(pg, t, pd, delta=cfg.delta)
        dens = max(dens, float(np.max(np.abs(rx - an.sho_position_density(x, t, ps)))),
                   float(np.max(np.abs(rp - an.sho_momentum_density(pg, t, ps)))))
        k0 = an.sho_kernel(0.3, -0.7, t, ps, cfg.delta)
        kern = max(kern, abs(an.dho_kernel(0.3, -0.7, t, pd, None, cfg.delta) - k0) / abs(k0))
        wd = WaveSample(grid, an.dho_wavefunction(0, x, t, pd, cfg.delta), "position", t)
        ws = WaveSample(grid, an.sho_coherent_state(x, t, ps), "position", t)
        ent = max(ent, abs(numeric_record(wd, pd, cfg.tail_tol).S_joint - numeric_record(ws, ps, cfg.tail_tol).S_joint))
    return {"passed": max(dens, kern, ent) < 1e-6, "density_max_abs": dens, "kernel_max_rel": kern,
            "entropy_max_abs": ent, "gamma": GAMMA_LIMIT}


def _finite(a):
    a = np.asarray(a, dtype=float)
    return a[np.isfinite(a)]


def _check_leipnik(cfg, grid, traces):
    s = np.concatenate([_finite(tr.S_joint_numeric) for tr in traces.values()])
    if len(s) == 0:
        return {"passed": False, "error": "no numeric entropies"}
    margin = float(np.min(s) - LEIPNIK_MIN)
    return {"passed": margin >= -1e-9, "min_margin": margin, "count": int(len(s))}


def _check_grid(cfg, grid, traces):
    out = {"passed": True, "failures": []}
    for name, tr in traces.items():
        for t, note in zip(tr.times, tr.notes):
            if note:
                out["failures"].append(f"{name} t={fmt(t)}: {note}")
    out["failure_count"] = len(out["failures"])
    out["failures"] = out["failures"][:20]
    out["passed"] = out["failure_count"] == 0
    return out


def _closed_vs_numeric(cfg, grid, traces):
    tr = traces["sho"]
    d = _finite(tr.S_joint_closed - tr.S_joint_numeric)
    s = _finite(tr.S_joint_numeric)
    return {
        "max_abs": float(np.max(np.abs(d))) if len(d) else None,
        "numeric_spread": float(np.ptp(s)) if len(s) else None,
        "xbar": cfg.params.xbar,
    }


def _deficits(cfg, grid, traces):
    pd = cfg.params.replace(gamma=GAMMA_LIMIT, xbar=0.0)
    t = (math.pi / 4.0) / pd.omega
    _, dx = an.dho_position_density(0.0, t, pd, delta=cfg.delta)
    _, dp = an.dho_momentum_density(0.0, t, pd, delta=cfg.delta)
    tr = traces["dho"]
    return {
        "gamma_limit_quarter_period": {"deficit_x": dx, "deficit_p": dp, "sin_omega_t": math.sin(math.pi / 4)},
        "dho_deficit_x_range": [_num(np.nanmin(tr.deficit_x)), _num(np.nanmax(tr.deficit_x))],
        "dho_deficit_p_range": [_num(np.nanmin(tr.deficit_p)), _num(np.nanmax(tr.deficit_p))],
        "gamma": float(_dho_params(cfg).gamma),
    }


HARD_CHECKS = {
    "mehler_convergence": _check_mehler,
    "van_vleck": _check_van_vleck,
    "kernel_composition_sho": _check_compose_sho,
    "kernel_composition_dho": _check_compose_dho,
    "parseval": _check_parseval,
    "momentum_fourier": _check_momentum_fourier,
    "kernel_assembly": _check_kernel_assembly,
    "dho_propagation": _check_dho_propagation,
    "gamma_zero_continuity": _check_gamma_zero,
}
TRACE_CHECKS = {"leipnik_bound": _check_leipnik, "grid_adequacy": _check_grid}
INFO_REPORTS = {"eq23_discrepancy": _closed_vs_numeric, "normalization_deficit": _deficits}


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating, complex)):
        return _num(obj)
    return obj


def validate_report(cfg: RunConfig) -> dict:
    grid = _grid(cfg)
    report = {"config": cfg.as_dict()}
    failures = []

    def run(name, fn, *args):
        try:
            res = fn(cfg, grid, *args)
        except QentError as exc:
            res = {"passed": False, "error": f"{type(exc).__name__}: {exc}"}
        report[name] = res
        if not res["passed"]:
            failures.append(name if "error" not in res else f"{name}: {res['error']}")

    for name, fn in HARD_CHECKS.items():
        run(name, fn)
    times = cfg.times()
    traces = {
        "sho": entropy_trace("sho", times, cfg.params, grid, "both", cfg.source, cfg.delta, cfg.tail_tol),
        "dho": entropy_trace("dho", times, _dho_params(cfg), grid, "both", cfg.source, cfg.delta, cfg.tail_tol),
    }
    for name, fn in TRACE_CHECKS.items():
        run(name, fn, traces)
    for name, fn in INFO_REPORTS.items():
        try:
            report[name] = dict(fn(cfg, grid, traces), informational=True)
        except QentError as exc:
            report[name] = {"informational": True, "error": f"{type(exc).__name__}: {exc}"}
    report["passed"] = not failures
    report["failures"] = failures
    return _clean(report)


def cmd_validate(cfg: RunConfig) -> tuple:
    report = validate_report(cfg)
    text = json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"
    return text, EXIT_OK if report["passed"] else EXIT_FAILED


COMMANDS = {"sho": cmd_sho, "dho": cmd_dho, "sweep": cmd_sweep, "validate": cmd_validate}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        print("usage: qent {sho,dho,validate,sweep} [options]  (qent -h for help)", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = parse_config(argv)
    except (ConfigParseError, ConstraintViolation) as exc:
        print(f"qent: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SystemExit as exc:  # argparse usage errors and -h
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        text, code = COMMANDS[cfg.mode](cfg)
    except QentError as exc:
        print(f"qent: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        if cfg.out:
            with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
            sys.stdout.flush()
    except OSError as exc:
        print(f"qent: cannot write output: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return code


if __name__ == "__main__":
    sys.exit(main())
