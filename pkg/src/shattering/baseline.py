"""Conventional compressed sensing reference.

A dense Gaussian matrix takes ``M = ceil(multiplier * m_max)`` real
measurements of the whole signal. Recovery is a block orthogonal matching
pursuit over real Fourier atoms: each frequency ``k`` contributes a
``(cos, sin)`` column pair that is selected as a unit, so the estimate is
always a real signal. The first few picks branch over the top candidates
(multipath search), which rescues most runs where a single early wrong pick
would derail plain OMP.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import BadDimensions, LengthMismatch, NoConvergence
from .validation import check_signal

DEFAULT_MULTIPLIER = 7.0
RESIDUAL_RTOL = 1e-8


@dataclass(frozen=True)
class CsConfig:
    n: int
    m_max: int
    multiplier: float = DEFAULT_MULTIPLIER
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise BadDimensions(f"signal length must be >= 2, got {self.n}")
        if self.m_max < 0 or self.multiplier <= 0:
            raise BadDimensions("m_max must be >= 0 and multiplier > 0")
        if not 1 <= self.n_measurements <= self.n:
            raise BadDimensions(
                f"{self.n_measurements} measurements for a length-{self.n} signal"
            )

    @property
    def n_measurements(self):
        # Round first so products like 7.0 * 25 never ceil up through float noise.
        return math.ceil(round(self.multiplier * self.m_max, 9))

    def matrix(self):
        """The ``M x N`` Gaussian sensing matrix, scaled by ``1/sqrt(M)``."""
        M = self.n_measurements
        rng = np.random.default_rng(self.seed)
        return rng.standard_normal((M, self.n)) / np.sqrt(M)


@dataclass
class PursuitResult:
    frequencies: list
    columns: list  # indices into the stacked [cos | sin] dictionary
    coef: np.ndarray
    residual_norms: list = field(default_factory=list)
    converged: bool = False


def cs_encode(x, config):
    x = check_signal(x, even=False)
    if x.size != config.n:
        raise LengthMismatch(f"signal has {x.size} samples, config expects {config.n}")
    return config.matrix() @ x


def fourier_atoms(n):
    """Real Fourier basis for bins ``0..n//2``: cosine and sine columns, each ``(n, n//2+1)``."""
    k = np.arange(n // 2 + 1)
    phase = 2 * np.pi * np.outer(np.arange(n), k) / n
    return np.cos(phase), np.sin(phase)


class _Dictionary:
    """Sensed Fourier dictionary with per-block Gram entries cached."""

    def __init__(self, D_cos, D_sin, has_sin):
        self.D_cos = D_cos
        self.D_sin = D_sin
        self.has_sin = np.asarray(has_sin, dtype=bool)
        self.nb = D_cos.shape[1]
        self.gcc = np.einsum("ij,ij->j", D_cos, D_cos)
        self.gss = np.einsum("ij,ij->j", D_sin, D_sin)
        self.gcs = np.einsum("ij,ij->j", D_cos, D_sin)
        self.det = np.where(self.has_sin, self.gcc * self.gss - self.gcs**2, 1.0)

    def scores(self, r, exclude=()):
        """Energy of ``r`` projected onto each block's span."""
        bc = self.D_cos.T @ r
        bs = self.D_sin.T @ r
        pair = (self.gss * bc**2 - 2 * self.gcs * bc * bs + self.gcc * bs**2) / self.det
        single = bc**2 / np.maximum(self.gcc, np.finfo(float).tiny)
        score = np.where(self.has_sin, pair, single)
        score[list(exclude)] = -np.inf
        return score

    def columns(self, blocks):
        ids = []
        for k in blocks:
            ids.append(k)
            if self.has_sin[k]:
                ids.append(self.nb + k)
        return ids

    def submatrix(self, ids):
        full = np.hstack([self.D_cos, self.D_sin])
        return full[:, ids]


def _refit(y, dic, blocks):
    ids = dic.columns(blocks)
    if not ids:
        return ids, np.zeros(0), y.copy()
    cols = dic.submatrix(ids)
    coef, *_ = np.linalg.lstsq(cols, y, rcond=None)
    return ids, coef, y - cols @ coef


def block_pursuit(y, D_cos, D_sin, budget, has_sin, rtol=RESIDUAL_RTOL, prefix=()):
    """Block OMP over ``(cos, sin)`` atom pairs.

    A block is picked by the energy of the residual's projection onto its
    span, then all picked columns are refit by least squares. Blocks with
    ``has_sin`` false (DC, Nyquist) act as single columns. ``prefix`` forces
    the first picks; the residual history still starts from the empty fit.
    """
    dic = D_cos if isinstance(D_cos, _Dictionary) else _Dictionary(D_cos, D_sin, has_sin)
    y = np.asarray(y, dtype=np.float64)
    target = rtol * np.linalg.norm(y)
    chosen = []
    ids, coef, r = [], np.zeros(0), y.copy()
    norms = [float(np.linalg.norm(r))]
    forced = list(prefix)
    while norms[-1] > target and len(chosen) < budget and len(chosen) < dic.nb:
        if forced:
            k = forced.pop(0)
        else:
            k = int(np.argmax(dic.scores(r, exclude=chosen)))
        chosen.append(k)
        ids, coef, r = _refit(y, dic, chosen)
        norms.append(float(np.linalg.norm(r)))
    return PursuitResult(chosen, ids, coef, norms, norms[-1] <= target)


def multipath_pursuit(y, D_cos, D_sin, budget, has_sin, rtol=RESIDUAL_RTOL,
                      branches=3, depth=2):
    """Tree-searched block OMP.

    The first ``depth`` picks branch over the ``branches`` best-scoring
    blocks; each prefix is then completed greedily. Prefixes are tried
    breadth-first (shortest first, best score first) and the first path that
    converges wins, so a lucky plain OMP run costs nothing extra. Without a
    converging path, the one with the smallest final residual is returned.
    """
    dic = _Dictionary(D_cos, D_sin, has_sin)
    y = np.asarray(y, dtype=np.float64)
    best = None
    frontier = [()]
    for level in range(depth + 1):
        for prefix in frontier:
            res = block_pursuit(y, dic, None, budget, None, rtol, prefix)
            if res.converged:
                return res
            if best is None or res.residual_norms[-1] < best.residual_norms[-1]:
                best = res
        if level == depth or level + 1 > budget:
            break
        grown = []
        for prefix in frontier:
            _, _, r = _refit(y, dic, list(prefix))
            order = np.argsort(dic.scores(r, exclude=prefix))[::-1][:branches]
            grown.extend(prefix + (int(k),) for k in order)
        frontier = grown
    return best


def cs_decode(y, config, sparsity_budget=None, *, return_result=False):
    """Recover a real signal from ``y = A @ x`` by block pursuit.

    ``sparsity_budget`` caps the number of frequencies (default
    ``min(2 * m_max, M // 2)``) and may not exceed ``M / 2``. Raises :class:`NoConvergence` when the
    budget runs out with the residual still above ``1e-8 * ||y||``.
    """
    y = np.asarray(y, dtype=np.float64)
    M = config.n_measurements
    if y.shape != (M,):
        raise BadDimensions(f"expected {M} measurements, got shape {y.shape}")
    if sparsity_budget is None:
        sparsity_budget = min(2 * config.m_max, M // 2)
    budget = int(sparsity_budget)
    if not 0 <= budget <= M / 2:
        raise BadDimensions(f"sparsity budget {budget} outside 0..{M // 2}")

    n = config.n
    C, S = fourier_atoms(n)
    A = config.matrix()
    k = np.arange(n // 2 + 1)
    has_sin = (k != 0) & (k != n // 2)
    res = multipath_pursuit(y, A @ C, A @ S, budget, has_sin)
    if not res.converged:
        raise NoConvergence(
            f"residual {res.residual_norms[-1]:.3e} after {len(res.frequencies)} frequencies"
        )
    x = np.hstack([C, S])[:, res.columns] @ res.coef
    return (x, res) if return_result else x
