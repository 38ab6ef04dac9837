"""Input validation helpers shared by the functional API and the estimators."""

from math import gcd

import numpy as np

from .exceptions import BadBankShape, LengthMismatch, NotCoprime


def check_signal(x, *, even=True, name="signal"):
    """Return ``x`` as a 1-D float64 array, enforcing the signal invariants."""
    x = np.asarray(x)
    if x.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {x.shape}")
    if np.iscomplexobj(x):
        raise ValueError(f"{name} must be real-valued")
    x = x.astype(np.float64, copy=False)
    if x.size < 2:
        raise ValueError(f"{name} needs at least 2 samples, got {x.size}")
    if even and x.size % 2:
        raise ValueError(f"{name} length must be even, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains NaN or inf")
    return x


def check_signals_2d(X, n=None):
    """Batch variant used by the estimators: rows are signals."""
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[np.newaxis, :]
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D array of signals, got shape {X.shape}")
    if np.iscomplexobj(X):
        raise ValueError("signals must be real-valued")
    X = X.astype(np.float64, copy=False)
    if n is not None and X.shape[1] != n:
        raise LengthMismatch(f"signals have length {X.shape[1]}, expected {n}")
    if not np.all(np.isfinite(X)):
        raise ValueError("signals contain NaN or inf")
    return X


def check_spectrum(X, n=None):
    X = np.asarray(X, dtype=np.complex128)
    if X.ndim != 1:
        raise ValueError(f"spectrum must be 1-D, got shape {X.shape}")
    if n is not None and X.size != n:
        raise LengthMismatch(f"spectrum has {X.size} bins, expected {n}")
    return X


def check_coprime(sigma, n):
    sigma = int(sigma)
    if not 1 <= sigma < n:
        raise NotCoprime(f"sigma={sigma} outside 1..{n - 1}")
    if gcd(sigma, n) != 1:
        raise NotCoprime(f"gcd({sigma}, {n}) = {gcd(sigma, n)}")
    return sigma


def check_bank_shape(n, t):
    if n < 2 or n % 2:
        raise BadBankShape(f"signal length must be even and >= 2, got {n}")
    if t < 1 or (n // 2) % t:
        raise BadBankShape(f"filter count {t} must divide N/2 = {n // 2}")
