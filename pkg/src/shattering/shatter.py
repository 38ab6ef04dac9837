"""Encoder: permute, filter, de-permute, sense and threshold.

Each of the ``T`` paths produces a *shattered* signal carrying the subset of
the input spectrum whose permuted position falls in that filter's band. When
every shattered signal holds at most one frequency, two complex numbers per
path are enough to describe it, and only paths whose measurement norm clears
the threshold are kept.
"""

import json
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from .exceptions import InvalidSparsity, LengthMismatch, NoValidSigma, ShatterCollision
from .filterbank import FilterBank, build_bank, filter_of_bin
from .permute import inverse_permute, permute, permuted_bin
from .sigcore import OCCUPANCY_RTOL, SparsitySpec, dft, idft
from .validation import check_bank_shape, check_coprime, check_signal

DEFAULT_THRESHOLD = 0.01

# Upper bound on (filters x samples) materialised at once during encode.
_CHUNK_ELEMENTS = 1 << 22


@dataclass(frozen=True)
class ShatterConfig:
    n: int
    t: int
    sigma: int
    threshold: float = DEFAULT_THRESHOLD
    sparsity: SparsitySpec | None = None

    def __post_init__(self):
        check_bank_shape(self.n, self.t)
        check_coprime(self.sigma, self.n)
        if not self.threshold >= 0:
            raise ValueError(f"threshold must be non-negative, got {self.threshold}")
        if self.sparsity is not None:
            self.sparsity.validate_for(self.n)
            if self.t < self.sparsity.m2:
                raise InvalidSparsity(
                    f"{self.t} filters cannot isolate up to {self.sparsity.m2} frequencies"
                )

    @cached_property
    def bank(self) -> FilterBank:
        return build_bank(self.n, self.t)

    @cached_property
    def matrix(self) -> "SensingMatrix":
        return SensingMatrix(self.n)


@dataclass(frozen=True)
class SensingMatrix:
    """The 2 x N deterministic sensing operator for 0/1-sparse signals.

    Row 0 weights bin ``s`` by ``cos(pi s / N)`` and row 1 by
    ``sin(pi s / N)`` for ``s = 0..N/2``; bins above ``N/2`` get zero weight,
    which discards the conjugate mirror.
    """

    n: int

    @property
    def phi_angles(self):
        return np.pi * np.arange(self.n // 2 + 1) / self.n

    @property
    def delta_theta(self):
        return np.pi / self.n

    @cached_property
    def weights(self):
        """``(cos theta_s, sin theta_s)`` for ``s = 0..N/2`` as a 2-row array.

        Built from one sine table reflected about pi/4 so that the Nyquist
        cosine and DC sine are exactly zero.
        """
        half = self.n // 2
        sines = np.sin(np.pi * np.arange(half + 1) / self.n)
        return np.vstack([sines[::-1], sines])

    def phi(self):
        """Dense 2 x N selection matrix applied after the DFT."""
        out = np.zeros((2, self.n))
        out[:, : self.n // 2 + 1] = self.weights
        return out

    def dense(self):
        """Dense 2 x N complex product of :meth:`phi` with the DFT matrix."""
        k = np.arange(self.n)
        psi = np.exp(-2j * np.pi * np.outer(k, k) / self.n)
        return self.phi() @ psi


@dataclass(frozen=True)
class MeasurementEntry:
    filter: int
    y0: complex
    y1: complex

    @property
    def norm(self):
        return float(np.hypot(abs(self.y0), abs(self.y1)))


@dataclass(frozen=True)
class MeasurementSet:
    """Retained measurements plus the encoder parameters needed to decode them."""

    n: int
    t: int
    sigma: int
    threshold: float
    entries: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        idx = [e.filter for e in self.entries]
        if any(not 1 <= c <= self.t for c in idx):
            raise ValueError(f"filter index outside 1..{self.t}")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("filter indices must be strictly increasing")
        for e in self.entries:
            if e.norm < self.threshold:
                raise ValueError(
                    f"entry for filter {e.filter} has norm {e.norm:.3e} below threshold"
                )

    def __len__(self):
        return len(self.entries)

    @property
    def filters(self):
        return [e.filter for e in self.entries]

    @property
    def stored_real_measurements(self):
        return 4 * len(self.entries)

    def to_dict(self):
        return {
            "n": self.n,
            "t": self.t,
            "sigma": self.sigma,
            "threshold": self.threshold,
            "entries": [
                {
                    "filter": e.filter,
                    "y0_re": complex(e.y0).real,
                    "y0_im": complex(e.y0).imag,
                    "y1_re": complex(e.y1).real,
                    "y1_im": complex(e.y1).imag,
                }
                for e in self.entries
            ],
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d):
        entries = sorted(
            (
                MeasurementEntry(
                    int(e["filter"]),
                    complex(e["y0_re"], e["y0_im"]),
                    complex(e["y1_re"], e["y1_im"]),
                )
                for e in d["entries"]
            ),
            key=lambda e: e.filter,
        )
        return cls(int(d["n"]), int(d["t"]), int(d["sigma"]), float(d["threshold"]), entries)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _shatter_spectrum(Xp, bank, sigma, filters, scale):
    """Shattered time signals for the given 1-based ``filters``."""
    masked = Xp[np.newaxis, :] * bank.responses[np.asarray(filters) - 1]
    return inverse_permute(idft(masked, scale=scale), sigma, axis=-1)


def shatter(x, config):
    """Return the ``T`` shattered signals as a ``(T, N)`` array.

    Row ``g-1`` is ``inverse_permute(filter_g(permute(x, sigma)), sigma)``;
    the rows sum back to ``x``.
    """
    x = check_signal(x)
    _check_length(x, config)
    Xp = dft(permute(x, config.sigma))
    filters = np.arange(1, config.t + 1)
    return _shatter_spectrum(Xp, config.bank, config.sigma, filters, np.max(np.abs(x)))


def check_shatter_validity(shattered, scale=None, *, first_filter=1):
    """Count occupied bins in ``0..N/2`` for each shattered signal.

    A bin counts when its magnitude exceeds ``1e-9`` of ``scale`` (default:
    the largest magnitude across all shattered spectra). Raises
    :class:`ShatterCollision` if any signal carries more than one frequency.
    ``first_filter`` is the index of row 0, used only in the error message.
    """
    shattered = np.atleast_2d(np.asarray(shattered, dtype=np.float64))
    if shattered.size == 0:
        return np.zeros(0, dtype=np.int64)
    spectra = dft(shattered)
    half = np.abs(spectra[:, : shattered.shape[1] // 2 + 1])
    if scale is None:
        scale = float(np.max(np.abs(spectra)))
    if scale == 0:
        return np.zeros(shattered.shape[0], dtype=np.int64)
    counts = np.count_nonzero(half > OCCUPANCY_RTOL * scale, axis=1)
    bad = np.flatnonzero(counts > 1)
    if bad.size:
        raise ShatterCollision(
            f"filter {bad[0] + first_filter} picked up {counts[bad[0]]} frequencies"
            f" ({bad.size} colliding filters in total)"
        )
    return counts


def sense_one(shattered, matrix):
    """Apply the 2 x N sensing operator to one shattered signal (or a stack).

    Returns ``(y0, y1)``; for a lone bin ``a <= N/2`` with coefficient ``b``
    this is ``(b cos(pi a/N), b sin(pi a/N))``.
    """
    X = dft(shattered)
    cos_row, sin_row = matrix.weights
    head = X[..., : cos_row.size]
    y0 = head @ cos_row
    y1 = head @ sin_row
    if np.ndim(y0) == 0:
        return complex(y0), complex(y1)
    return y0, y1


def sense_all(x, config, *, validate=True):
    """Pre-threshold measurements of every path, as two length-T arrays.

    Processes filters in chunks so the full ``T x N`` shattered stack never
    has to exist at once.
    """
    x = check_signal(x)
    _check_length(x, config)
    n, t = config.n, config.t
    scale = float(np.max(np.abs(dft(x))))
    amplitude = float(np.max(np.abs(x)))
    Xp = dft(permute(x, config.sigma))
    y0 = np.empty(t, dtype=np.complex128)
    y1 = np.empty(t, dtype=np.complex128)
    step = max(1, _CHUNK_ELEMENTS // n)
    for lo in range(0, t, step):
        filters = np.arange(lo + 1, min(t, lo + step) + 1)
        chunk = _shatter_spectrum(Xp, config.bank, config.sigma, filters, amplitude)
        if validate:
            check_shatter_validity(chunk, scale=scale, first_filter=lo + 1)
        y0[lo : lo + filters.size], y1[lo : lo + filters.size] = sense_one(chunk, config.matrix)
    return y0, y1


def encode(x, config):
    """Encode a real signal into its thresholded :class:`MeasurementSet`."""
    y0, y1 = sense_all(x, config)
    norms = np.hypot(np.abs(y0), np.abs(y1))
    keep = np.flatnonzero((norms >= config.threshold) & (norms > 0))
    entries = [MeasurementEntry(int(g) + 1, complex(y0[g]), complex(y1[g])) for g in keep]
    return MeasurementSet(config.n, config.t, config.sigma, float(config.threshold), entries)


def support_is_shatterable(support, sigma, n, t):
    """True when each frequency in ``support`` lands in its own filter."""
    owners = filter_of_bin(permuted_bin(sorted(support), sigma, n), n, t)
    return np.unique(owners).size == owners.size


def find_sigma(n, t, support, start=1):
    """Smallest coprime ``sigma >= start`` that shatters ``support`` into distinct filters.

    Candidates below ``start`` are tried afterwards (ascending) so the search
    is complete. Raises :class:`NoValidSigma` when no ``sigma`` in ``1..n-1``
    works.
    """
    n = int(n)
    t = int(t)
    check_bank_shape(n, t)
    support = np.unique(np.asarray(sorted(support), dtype=np.int64))
    if support.size and (support[0] < 0 or support[-1] > n // 2):
        raise ValueError(f"support must lie in 0..{n // 2}")
    if support.size > t:
        raise NoValidSigma(f"{support.size} frequencies cannot fit in {t} filters")
    start = min(max(int(start), 1), n - 1)
    order = list(range(start, n)) + list(range(1, start))
    candidates = np.array([s for s in order if gcd(s, n) == 1], dtype=np.int64)
    if support.size <= 1:
        return int(candidates[0])
    step = max(1, _CHUNK_ELEMENTS // support.size)
    for lo in range(0, candidates.size, step):
        sig = candidates[lo : lo + step]
        owners = filter_of_bin((sig[:, None] * support[None, :]) % n, n, t)
        owners.sort(axis=1)
        ok = np.all(np.diff(owners, axis=1) != 0, axis=1)
        hit = np.flatnonzero(ok)
        if hit.size:
            return int(sig[hit[0]])
    raise NoValidSigma(f"no sigma separates {support.size} frequencies into {t} filters")


def _check_length(x, config):
    if x.size != config.n:
        raise LengthMismatch(f"signal has {x.size} samples, config expects {config.n}")
