"""Ideal non-overlapping band-pass filter bank.

Filter ``b`` (1-based) of a ``T``-filter bank on length ``N`` passes the
low band ``[(b-1)w, bw)`` and its mirror ``(N - bw, N - (b-1)w]`` with
``w = N / (2T)``; filter 1's mirror stops at ``N - 1`` and filter ``T``
also takes the Nyquist bin ``N/2``. Together the masks partition the bins.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import LengthMismatch
from .validation import check_bank_shape


@dataclass(frozen=True, eq=False)
class FilterBank:
    n: int
    t: int
    responses: np.ndarray = field(repr=False)  # (t, n) 0/1 masks

    @property
    def band_width(self):
        return self.n // (2 * self.t)

    @property
    def owner(self):
        """1-based index of the filter passing each bin."""
        return np.argmax(self.responses, axis=0) + 1

    def mask(self, b):
        self._check_index(b)
        return self.responses[b - 1]

    def impulse_response(self, b):
        """Real impulse response ``h_b = idft(mask_b)``."""
        return np.fft.ifft(self.mask(b)).real

    def _check_index(self, b):
        if not 1 <= b <= self.t:
            raise IndexError(f"filter index {b} outside 1..{self.t}")


def filter_of_bin(k, n, t):
    """1-based filter index owning bin ``k`` (vectorised, no mask needed)."""
    k = np.asarray(k, dtype=np.int64) % n
    folded = np.minimum(k, n - k)
    w = n // (2 * t)
    return np.minimum(folded // w, t - 1) + 1


def build_bank(n, t):
    """Build the ``t`` bin masks for length ``n``."""
    n = int(n)
    t = int(t)
    check_bank_shape(n, t)
    w = n // (2 * t)
    k = np.arange(n)
    responses = np.zeros((t, n), dtype=np.int8)
    for b in range(1, t + 1):
        low = ((b - 1) * w <= k) & (k < b * w)
        a1 = n - b * w
        a2 = n - 1 if b == 1 else n - (b - 1) * w
        high = (a1 < k) & (k <= a2)
        responses[b - 1] = low | high
    responses[t - 1, n // 2] = 1
    responses.setflags(write=False)
    return FilterBank(n, t, responses)


def apply_filter(X, bank, b):
    """Bin-wise product of spectrum ``X`` with mask ``b``.

    This is the frequency-domain form of circularly convolving the signal
    with the filter's impulse response.
    """
    X = np.asarray(X, dtype=np.complex128)
    if X.shape[-1] != bank.n:
        raise LengthMismatch(f"spectrum has {X.shape[-1]} bins, bank expects {bank.n}")
    return X * bank.mask(b)


def circular_convolve(x, h):
    """Direct O(N^2) circular convolution, ``y[n] = sum_j h[(n-j) % N] x[j]``."""
    x = np.asarray(x)
    h = np.asarray(h)
    n = x.shape[-1]
    if h.shape[-1] != n:
        raise LengthMismatch("signal and impulse response lengths differ")
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return h[idx] @ x
