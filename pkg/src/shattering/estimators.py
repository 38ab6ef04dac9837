"""scikit-learn style wrappers.

Both estimators take a 2-D array whose rows are real signals of equal length.
``transform`` produces fixed-width real feature rows so the encoders drop
into pipelines; ``inverse_transform`` runs the matching decoder.
"""

from math import gcd

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .baseline import DEFAULT_MULTIPLIER, CsConfig, cs_decode
from .exceptions import NoValidSigma
from .recon import decode
from .shatter import (
    DEFAULT_THRESHOLD,
    MeasurementEntry,
    MeasurementSet,
    ShatterConfig,
    encode,
    support_is_shatterable,
)
from .sigcore import dft, occupied_bins
from .validation import check_bank_shape, check_signals_2d


class ShatteringEncoder(TransformerMixin, BaseEstimator):
    """Compressed shattering as a transformer.

    Parameters
    ----------
    n_filters : int
        Filter count ``T``; must divide half the signal length.
    sigma : int or None
        Permutation parameter. ``None`` searches during ``fit`` for the
        smallest value that shatters every training row.
    threshold : float
        Measurement-norm cutoff for keeping a filter's output.

    Attributes
    ----------
    sigma_ : int
    config_ : ShatterConfig
    n_features_in_ : int

    ``transform`` returns ``4 * n_filters`` columns per row, laid out as
    ``(Re y0, Im y0, Re y1, Im y1)`` for each filter, with discarded filters
    left at zero.
    """

    def __init__(self, n_filters=100, sigma=None, threshold=DEFAULT_THRESHOLD):
        self.n_filters = n_filters
        self.sigma = sigma
        self.threshold = threshold

    def fit(self, X, y=None):
        X = check_signals_2d(X)
        n = X.shape[1]
        check_bank_shape(n, self.n_filters)
        supports = [occupied_bins(dft(row)) for row in X]
        sigma = self.sigma if self.sigma is not None else self._search_sigma(n, supports)
        self.config_ = ShatterConfig(n, self.n_filters, sigma, self.threshold)
        self.sigma_ = self.config_.sigma
        self.n_features_in_ = n
        return self

    def _search_sigma(self, n, supports):
        for s in range(1, n):
            if gcd(s, n) != 1:
                continue
            if all(support_is_shatterable(sup, s, n, self.n_filters) for sup in supports):
                return s
        raise NoValidSigma("no sigma shatters every training signal")

    def encode(self, X):
        """List of :class:`MeasurementSet`, one per row."""
        check_is_fitted(self, "config_")
        X = check_signals_2d(X, self.n_features_in_)
        return [encode(row, self.config_) for row in X]

    def transform(self, X):
        sets = self.encode(X)
        out = np.zeros((len(sets), 4 * self.n_filters))
        for i, ms in enumerate(sets):
            for e in ms.entries:
                j = 4 * (e.filter - 1)
                out[i, j : j + 4] = (e.y0.real, e.y0.imag, e.y1.real, e.y1.imag)
        return out

    def inverse_transform(self, Y):
        check_is_fitted(self, "config_")
        Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
        cfg = self.config_
        if Y.shape[1] != 4 * cfg.t:
            raise ValueError(f"expected {4 * cfg.t} columns, got {Y.shape[1]}")
        rows = []
        for feats in Y:
            quad = feats.reshape(cfg.t, 4)
            entries = [
                MeasurementEntry(g + 1, complex(q[0], q[1]), complex(q[2], q[3]))
                for g, q in enumerate(quad)
                if np.any(q != 0)
            ]
            rows.append(decode(MeasurementSet(cfg.n, cfg.t, cfg.sigma, 0.0, entries)))
        return np.vstack(rows)


class CompressedSensingEncoder(TransformerMixin, BaseEstimator):
    """Gaussian-matrix compressed sensing with a pursuit decoder.

    ``fit`` only fixes the signal length and draws the sensing matrix
    (``components_``, shape ``(M, N)``); ``transform`` is ``X @ components_.T``.
    """

    def __init__(self, m_max=25, multiplier=DEFAULT_MULTIPLIER, random_state=0,
                 sparsity_budget=None):
        self.m_max = m_max
        self.multiplier = multiplier
        self.random_state = random_state
        self.sparsity_budget = sparsity_budget

    def fit(self, X, y=None):
        X = check_signals_2d(X)
        self.config_ = CsConfig(X.shape[1], self.m_max, self.multiplier, self.random_state)
        self.components_ = self.config_.matrix()
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "components_")
        X = check_signals_2d(X, self.n_features_in_)
        return X @ self.components_.T

    def inverse_transform(self, Y):
        check_is_fitted(self, "components_")
        Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
        return np.vstack([cs_decode(y, self.config_, self.sparsity_budget) for y in Y])
