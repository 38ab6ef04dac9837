"""Modular index permutation ``x_p[n] = x[(sigma * n) mod N]``.

Permuting a signal with ``sigma`` permutes its spectrum with the modular
inverse of ``sigma``: ``X_p[k] = X[(sigma_inv * k) mod N]``. A bin ``k`` of
the original spectrum therefore lands at ``(sigma * k) mod N``.
"""

from dataclasses import dataclass
from math import gcd

import numpy as np

from .exceptions import NotCoprime
from .validation import check_coprime


@dataclass(frozen=True)
class PermParam:
    sigma: int
    sigma_inv: int
    n: int

    @classmethod
    def from_sigma(cls, sigma, n):
        return cls(int(sigma), mod_inverse(sigma, n), int(n))


def mod_inverse(sigma, n):
    """Return ``t`` in ``1..n-1`` with ``(sigma * t) % n == 1``."""
    sigma = int(sigma)
    n = int(n)
    if n == 1:
        raise NotCoprime("modulus must exceed 1")
    if not 1 <= sigma < n:
        raise NotCoprime(f"sigma={sigma} outside 1..{n - 1}")
    if gcd(sigma, n) != 1:
        raise NotCoprime(f"gcd({sigma}, {n}) = {gcd(sigma, n)}")
    return pow(sigma, -1, n)


def permutation_indices(sigma, n):
    """Source index for each output position, ``(sigma * arange(n)) % n``."""
    sigma = check_coprime(sigma, n)
    return (sigma * np.arange(n, dtype=np.int64)) % n


def permute(x, sigma, axis=-1):
    """Rearrange samples (or spectral bins) so ``out[n] = x[(sigma*n) % N]``.

    Works on real signals and complex spectra alike, along ``axis``.
    """
    x = np.asarray(x)
    return np.take(x, permutation_indices(sigma, x.shape[axis]), axis=axis)


def inverse_permute(x, sigma, axis=-1):
    """Undo :func:`permute` with the same ``sigma``."""
    x = np.asarray(x)
    n = x.shape[axis]
    return np.take(x, permutation_indices(mod_inverse(sigma, n), n), axis=axis)


def permute_spectrum(X, sigma):
    # Same index map as for signals; kept separate for readability at call sites.
    return permute(X, sigma)


def permuted_bin(k, sigma, n):
    """Position a spectral bin ``k`` moves to when the signal is permuted by ``sigma``."""
    return (int(sigma) * np.asarray(k, dtype=np.int64)) % n
