"""Dense single-matrix view of the encoder.

For path ``g`` the whole chain collapses into one 2 x N complex matrix
``gamma_g = A @ P_inv @ Hmat_g @ P``. Stacking all ``T`` of them gives the
2T x N operator whose product with ``x`` is every pre-threshold measurement.
Everything here is dense and meant as a correctness oracle, so it is capped
at ``MAX_N`` samples.
"""

import numpy as np
from scipy.linalg import circulant

from .permute import mod_inverse, permutation_indices
from .shatter import SensingMatrix

MAX_N = 4096


def _guard(n):
    if n > MAX_N:
        raise ValueError(f"dense matrix form limited to N <= {MAX_N}, got {n}")


def permutation_matrix(sigma, n):
    """``P`` with ``(P @ x)[i] == x[(sigma * i) % n]``."""
    P = np.zeros((n, n))
    P[np.arange(n), permutation_indices(sigma, n)] = 1.0
    return P


def inverse_permutation_matrix(sigma, n):
    return permutation_matrix(mod_inverse(sigma, n), n)


def convolution_matrix(bank, g):
    """Circulant ``Hmat_g`` built from the impulse response of filter ``g``."""
    return circulant(bank.impulse_response(g))


def sensing_matrix(n):
    """``A = Phi @ Psi`` as a dense 2 x N complex array."""
    return SensingMatrix(n).dense()


def build_gamma(config, bank, g, *, A=None):
    _guard(config.n)
    n = config.n
    if A is None:
        A = sensing_matrix(n)
    # Left-to-right keeps every intermediate at 2 x N.
    out = A @ inverse_permutation_matrix(config.sigma, n)
    out = out @ convolution_matrix(bank, g)
    return out @ permutation_matrix(config.sigma, n)


def build_stacked(config):
    """Vertical stack ``[gamma_1; ...; gamma_T]`` of shape ``(2T, N)``."""
    _guard(config.n)
    A = sensing_matrix(config.n)
    bank = config.bank
    return np.vstack([build_gamma(config, bank, g, A=A) for g in range(1, config.t + 1)])


def stacked_to_csv(stacked, fh):
    """Write a complex matrix row-major, each cell as a ``re,im`` pair."""
    flat = np.empty((stacked.shape[0], 2 * stacked.shape[1]))
    flat[:, 0::2] = stacked.real
    flat[:, 1::2] = stacked.imag
    np.savetxt(fh, flat, delimiter=",", fmt="%.17g")
