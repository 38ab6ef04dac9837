"""Signals, spectra and the DFT pair.

Signals are plain real ``ndarray`` objects of even length N; spectra are
complex ``ndarray`` objects of the same length indexed by bin k = 0..N-1.
The forward transform is unnormalised and the inverse carries the 1/N
factor, so ``idft(dft(x)) == x``.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidSparsity, NonRealResult
from .validation import check_signal, check_spectrum

SYMMETRY_RTOL = 1e-10
IMAG_RTOL = 1e-8
OCCUPANCY_RTOL = 1e-9


@dataclass(frozen=True)
class SparsitySpec:
    """Admissible range ``[m1, m2]`` of occupied bins in ``0..N/2``."""

    m1: int
    m2: int

    def __post_init__(self):
        if not 0 <= self.m1 <= self.m2:
            raise InvalidSparsity(f"need 0 <= m1 <= m2, got ({self.m1}, {self.m2})")

    def validate_for(self, n):
        if self.m2 > n // 2:
            raise InvalidSparsity(f"m2={self.m2} exceeds N/2={n // 2}")
        return self


def dft(x, axis=-1):
    """Unnormalised DFT, ``X[k] = sum_n x[n] exp(-2j pi n k / N)``.

    Works along ``axis`` so a stack of signals can be transformed at once.
    """
    return np.fft.fft(np.asarray(x, dtype=np.float64), axis=axis)


def idft(X, axis=-1, *, check=True, scale=None):
    """Inverse of :func:`dft`, returning the real signal.

    Raises :class:`NonRealResult` when the imaginary part left by the
    inverse transform exceeds ``1e-8 * scale``, which means the spectrum was
    not conjugate-symmetric. ``scale`` defaults to the peak of the real part
    over the whole array; pass the input amplitude when transforming pieces
    of a larger signal, some of which may be pure rounding noise. Residues
    within a few ulps of the spectrum's peak are always accepted.
    """
    X = np.asarray(X, dtype=np.complex128)
    z = np.fft.ifft(X, axis=axis)
    if check and z.size:
        peak = np.max(np.abs(z.real)) if scale is None else scale
        resid = np.max(np.abs(z.imag))
        floor = 64 * np.finfo(np.float64).eps * np.max(np.abs(X))
        if resid > max(IMAG_RTOL * peak, floor):
            worst = float(np.max(resid))
            raise NonRealResult(f"imaginary residue {worst:.3e} after inverse DFT")
    return np.ascontiguousarray(z.real)


def mirror_index(k, n):
    return (-np.asarray(k)) % n


def is_conjugate_symmetric(X, rtol=SYMMETRY_RTOL):
    X = np.asarray(X, dtype=np.complex128)
    n = X.shape[-1]
    scale = np.max(np.abs(X)) if X.size else 0.0
    mirrored = np.conj(X[..., mirror_index(np.arange(n), n)])
    return bool(np.max(np.abs(X - mirrored), initial=0.0) <= rtol * scale)


def occupied_bins(X, rtol=OCCUPANCY_RTOL, scale=None):
    """Indices in ``0..N/2`` whose magnitude exceeds ``rtol * scale``.

    ``scale`` defaults to the spectrum's own peak magnitude.
    """
    X = np.asarray(X)
    half = np.abs(X[: X.size // 2 + 1])
    if scale is None:
        scale = np.max(np.abs(X), initial=0.0)
    if scale == 0:
        return np.array([], dtype=np.int64)
    return np.flatnonzero(half > rtol * scale)


def sparsity(x):
    """Number of occupied frequencies of a real signal, mirrors excluded."""
    return int(occupied_bins(dft(check_signal(x))).size)


def spectrum_from_atoms(n, bins, coeffs):
    """Conjugate-symmetric spectrum with ``coeffs`` at ``bins`` (all <= N/2)."""
    X = np.zeros(n, dtype=np.complex128)
    bins = np.asarray(bins, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    X[bins] = coeffs
    X[mirror_index(bins, n)] = np.conj(coeffs)
    return X


def generate_sparse(n, m, seed, *, support="random"):
    """Random real signal of length ``n`` with exactly ``m`` occupied frequencies.

    Bin positions are drawn without replacement from ``0..n/2``; with
    ``support="clustered"`` they form one contiguous run at a random offset
    instead, which is the case the index permutation is meant to break up.
    Coefficient magnitudes are uniform in ``[0.5, 1.5] * n`` with uniform
    phase, so time-domain amplitudes are O(1). Bins 0 and n/2 get a real
    coefficient with random sign.
    """
    n = int(n)
    m = int(m)
    if n < 2 or n % 2:
        raise ValueError(f"length must be even and >= 2, got {n}")
    half = n // 2
    if not 0 <= m <= half:
        raise InvalidSparsity(f"sparsity {m} outside 0..{half}")
    rng = np.random.default_rng(seed)
    if support == "random":
        bins = np.sort(rng.choice(half + 1, size=m, replace=False))
    elif support == "clustered":
        start = int(rng.integers(0, half + 2 - m))
        bins = np.arange(start, start + m)
    else:
        raise ValueError(f"unknown support pattern {support!r}")
    mags = rng.uniform(0.5, 1.5, size=m) * n
    phases = rng.uniform(0.0, 2 * np.pi, size=m)
    coeffs = mags * np.exp(1j * phases)
    edge = (bins == 0) | (bins == half)
    coeffs[edge] = mags[edge] * rng.choice([-1.0, 1.0], size=int(edge.sum()))
    return idft(spectrum_from_atoms(n, bins, coeffs))


def spectrum_check(X, n=None):
    """Validate a spectrum and confirm it belongs to a real signal."""
    X = check_spectrum(X, n)
    if not is_conjugate_symmetric(X):
        raise NonRealResult("spectrum is not conjugate-symmetric")
    return X
