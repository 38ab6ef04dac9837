"""Cost model, Table-style comparison and the measurement-count sweep."""

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .baseline import CsConfig
from .exceptions import ShatteringError
from .recon import decode
from .shatter import DEFAULT_THRESHOLD, ShatterConfig, encode, find_sigma, support_is_shatterable
from .sigcore import dft, generate_sparse, occupied_bins

SHATTERING = "shattering"
CONVENTIONAL = "conventional"


@dataclass(frozen=True)
class CostReport:
    method: str
    stored_real_measurements: int
    additions: int
    multiplications: int


def cost_model(method, n, *, t=None, r=None, n_measurements=None):
    """Analytic storage and arithmetic counts for one encode.

    Shattering applies the stacked ``2T x N`` complex operator to a real
    signal, i.e. ``4T`` real rows of length ``N``, and stores 4 reals per
    retained filter. Conventional sensing applies ``M`` real rows and stores
    all ``M`` results.
    """
    if method == SHATTERING:
        if t is None or r is None:
            raise ValueError("shattering cost needs t and r")
        rows = 4 * t
        return CostReport(method, 4 * r, rows * (n - 1), rows * n)
    if method == CONVENTIONAL:
        if n_measurements is None:
            raise ValueError("conventional cost needs n_measurements")
        M = n_measurements
        return CostReport(method, M, M * (n - 1), M * n)
    raise ValueError(f"unknown method {method!r}")


def choose_sigma(n, t, support, sigma=None):
    """Use ``sigma`` if it shatters ``support``, else search upward from it."""
    if sigma is not None and support_is_shatterable(support, sigma, n, t):
        return int(sigma)
    return find_sigma(n, t, support, start=1 if sigma is None else sigma)


def run_shattering(x, n, t, sigma=None, threshold=DEFAULT_THRESHOLD):
    """Encode and decode ``x``; returns ``(measurements, max_abs_error)``."""
    support = occupied_bins(dft(x))
    sigma = choose_sigma(n, t, support, sigma)
    ms = encode(x, ShatterConfig(n, t, sigma, threshold))
    err = float(np.max(np.abs(decode(ms) - x)))
    return ms, err


def table1(n=1000, t=100, m_values=(5, 25), multiplier=7.0, m_max=None, sigma=11, seed=0):
    """Measurement and operation counts for both methods at each sparsity.

    The shattering stored count comes from actually encoding a generated
    signal, so it reflects the retained entries rather than an assumed ``m``.
    """
    m_max = max(m_values) if m_max is None else m_max
    M = CsConfig(n, m_max, multiplier).n_measurements
    rows = []
    for m in m_values:
        x = generate_sparse(n, m, seed)
        ms, err = run_shattering(x, n, t, sigma)
        cs = cost_model(CONVENTIONAL, n, n_measurements=M)
        sh = cost_model(SHATTERING, n, t=t, r=len(ms))
        rows.append(
            {
                "n": n,
                "m": m,
                "t": t,
                "sigma": ms.sigma,
                "meas_cs": cs.stored_real_measurements,
                "meas_shatter": sh.stored_real_measurements,
                "add_cs": cs.additions,
                "add_shatter": sh.additions,
                "mul_cs": cs.multiplications,
                "mul_shatter": sh.multiplications,
                "max_abs_err_shatter": err,
            }
        )
    return rows


@dataclass
class SweepRow:
    m: int
    seed: int
    sigma: int | None
    status: str
    stored_shatter: int | None
    stored_cs: int
    max_abs_err_shatter: float | None


SWEEP_FIELDS = list(SweepRow.__dataclass_fields__)


def _sweep_one(n, t, m, seed, stored_cs, sigma, threshold, support):
    x = generate_sparse(n, m, seed, support=support)
    try:
        ms, err = run_shattering(x, n, t, sigma, threshold)
    except ShatteringError as exc:
        return SweepRow(m, seed, None, type(exc).__name__, None, stored_cs, None)
    return SweepRow(m, seed, ms.sigma, "ok", ms.stored_real_measurements, stored_cs, err)


def sweep_measurements(n, t, m_values, multiplier=6.0, m_max=None, seeds=(0,), *,
                       sigma=None, threshold=DEFAULT_THRESHOLD, support="random", n_jobs=1):
    """One row per ``(m, seed)``: stored counts for both methods and the shattering error.

    Failures (no separating sigma, collisions) are recorded in ``status``
    instead of aborting. Rows come back sorted by ``(m, seed)`` whatever the
    completion order.
    """
    m_values = sorted(int(m) for m in m_values)
    if m_values and m_values[-1] > t:
        raise ValueError(f"sparsity {m_values[-1]} exceeds filter count {t}")
    m_max = max(m_values, default=0) if m_max is None else m_max
    stored_cs = CsConfig(n, m_max, multiplier).n_measurements
    jobs = [(n, t, m, s, stored_cs, sigma, threshold, support) for m in m_values for s in seeds]
    if n_jobs == 1:
        rows = [_sweep_one(*j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            rows = list(pool.map(lambda j: _sweep_one(*j), jobs))
    return sorted(rows, key=lambda r: (r.m, r.seed))


def rows_to_csv(rows, fieldnames=None):
    """Render dict or dataclass rows as CSV text with a header line."""
    rows = [asdict(r) if not isinstance(r, dict) else r for r in rows]
    if fieldnames is None:
        fieldnames = list(rows[0]) if rows else SWEEP_FIELDS
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: "" if r[k] is None else r[k] for k in fieldnames})
    return buf.getvalue()
