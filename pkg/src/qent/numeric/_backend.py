"""Select the compiled core or the numpy fallback at import.

``QENT_BACKEND=python`` forces the fallback.  ``QENT_THREADS`` caps the
worker count used by the compiled core and by trace generation.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("QENT_BACKEND", "").lower() not in ("python", "py", "fallback"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels


def thread_count() -> int:
    raw = os.environ.get("QENT_THREADS", "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def chirp_matvec(x_out, x0, dx, phi, q, nthreads=None):
    return _impl.chirp_matvec(x_out, float(x0), float(dx), phi, float(q), int(nthreads or thread_count()))


def backend_name() -> str:
    return BACKEND
