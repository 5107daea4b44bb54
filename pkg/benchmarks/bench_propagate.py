"""Time one kernel propagation step with the compiled core and the numpy fallback.

    python benchmarks/bench_propagate.py [--sizes 512 1024 2048 4096] [--repeat 5] [--threads N]
"""
import argparse
import math
import time

import numpy as np

from qent.analytic import ShoPropagator, sho_coherent_state
from qent.core import OscillatorParams, WaveSample
from qent.numeric import _backend, _pykernels, build_grid

try:
    from qent.numeric import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[512, 1024, 2048, 4096])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--threads", type=int, default=_backend.thread_count())
    args = ap.parse_args()

    p = OscillatorParams(xbar=1.0)
    fam = ShoPropagator(p)
    t = 1.0
    print(f"{'n':>6} {'python [ms]':>12} {'cython 1t [ms]':>15} {'cython {}t [ms]'.format(args.threads):>15} {'max |diff|':>11}")
    for n in args.sizes:
        g = build_grid(12.0, n)
        w = WaveSample(g, sho_coherent_state(g.x, 0.0, p), "position", 0.0)
        F = fam.form(t)
        x = g.x
        phi = w.values * np.exp(1j * F.src2 * x * x)
        call = lambda mod, k: mod.chirp_matvec(x, g.x_min, g.dx, phi, F.cross, k)  # noqa: E731
        t_py = best_of(lambda: call(_pykernels, 1), args.repeat)
        if _ckernels is None:
            print(f"{n:>6} {1e3 * t_py:>12.2f} {'n/a':>15} {'n/a':>15} {'n/a':>11}")
            continue
        t_c1 = best_of(lambda: call(_ckernels, 1), args.repeat)
        t_cn = best_of(lambda: call(_ckernels, args.threads), args.repeat)
        diff = float(np.max(np.abs(call(_ckernels, 1) - call(_pykernels, 1))))
        print(f"{n:>6} {1e3 * t_py:>12.2f} {1e3 * t_c1:>15.2f} {1e3 * t_cn:>15.2f} {diff:>11.1e}")


if __name__ == "__main__":
    main()
