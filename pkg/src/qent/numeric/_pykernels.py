"""Pure numpy fallback for the compiled core (same signatures)."""
import numpy as np

# rows per block; bounds the temporary (rows x n) complex matrix
_BLOCK = 256


def chirp_matvec(x_out, x0, dx, phi, q, nthreads=1):
    x_out = np.asarray(x_out, dtype=float)
    phi = np.asarray(phi, dtype=complex)
    x_in = x0 + dx * np.arange(phi.shape[0])
    out = np.empty(x_out.shape[0], dtype=complex)
    for start in range(0, x_out.shape[0], _BLOCK):
        xo = x_out[start:start + _BLOCK]
        e = np.exp(1j * q * np.multiply.outer(xo, x_in))
        # np.sum is pairwise and single-threaded: deterministic, unlike BLAS gemv
        out[start:start + _BLOCK] = np.sum(e * phi, axis=1)
    return out
