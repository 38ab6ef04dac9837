"""Closed-form decoder for shattered measurements.

Each retained measurement pair ``(y0, y1) = beta * (cos a dtheta, sin a dtheta)``
pins down one frequency: the angle of ``(|y0|, |y1|)`` gives the bin ``a`` and
either component gives the coefficient ``beta``.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import NonRealResult, OffGridAngle
from .shatter import MeasurementSet, SensingMatrix
from .sigcore import idft

ANGLE_ATOL = 1e-6
REAL_RTOL = 1e-8


@dataclass(frozen=True)
class RecoveredAtom:
    alpha: int
    beta: complex


def recover_atom(y0, y1, n):
    """Recover bin index and complex coefficient from one measurement pair."""
    y0 = complex(y0)
    y1 = complex(y1)
    r0, r1 = abs(y0), abs(y1)
    if r0 == 0 and r1 == 0:
        raise OffGridAngle("zero measurement carries no frequency")
    # atan2 of the magnitudes equals arccos(|y0| / ||y||) but stays accurate near 0.
    theta = np.arctan2(r1, r0)
    matrix = SensingMatrix(int(n))
    step = matrix.delta_theta
    alpha = int(np.rint(theta / step))
    if abs(theta - alpha * step) >= ANGLE_ATOL or not 0 <= alpha <= n // 2:
        raise OffGridAngle(
            f"angle {theta:.9f} rad is {abs(theta - alpha * step):.2e} off the grid"
        )
    cos_a, sin_a = matrix.weights[:, alpha]
    beta = y0 / cos_a if cos_a >= sin_a else y1 / sin_a
    return RecoveredAtom(alpha, beta)


def atom_to_spectrum(atom, n):
    """Spectrum holding ``beta`` at ``alpha`` and its conjugate at ``N - alpha``.

    DC and Nyquist are self-mirrored, so only one bin is written there and the
    coefficient must be real.
    """
    X = np.zeros(n, dtype=np.complex128)
    beta = complex(atom.beta)
    if atom.alpha in (0, n // 2):
        if abs(beta.imag) > REAL_RTOL * abs(beta):
            raise NonRealResult(f"complex coefficient {beta} at self-conjugate bin {atom.alpha}")
        X[atom.alpha] = beta.real
    else:
        X[atom.alpha] = beta
        X[n - atom.alpha] = beta.conjugate()
    return X


def recover_spectrum(measurements):
    n = measurements.n
    X = np.zeros(n, dtype=np.complex128)
    for e in measurements.entries:
        # Atoms sharing a bin are summed, which keeps decode linear.
        X += atom_to_spectrum(recover_atom(e.y0, e.y1, n), n)
    return X


def decode(measurements: MeasurementSet):
    """Reconstruct the time-domain signal from a :class:`MeasurementSet`."""
    return idft(recover_spectrum(measurements))
