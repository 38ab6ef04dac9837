import numpy as np
import pytest

from shattering.baseline import (
    CsConfig,
    block_pursuit,
    cs_decode,
    cs_encode,
    fourier_atoms,
)
from shattering.exceptions import BadDimensions, NoConvergence
from shattering.sigcore import generate_sparse


def test_measurement_counts():
    assert CsConfig(1000, 25, 7).n_measurements == 175
    assert CsConfig(1 << 14, 1024, 6).n_measurements == 6144
    assert CsConfig(4096, 256, 6).n_measurements == 1536


def test_bad_dimensions():
    with pytest.raises(BadDimensions):
        CsConfig(100, 25, 7)


def test_encode_zero():
    cfg = CsConfig(1000, 25)
    y = cs_encode(np.zeros(1000), cfg)
    assert y.shape == (175,) and not np.any(y)


def test_encode_linearity(rng):
    cfg = CsConfig(256, 8, seed=4)
    a, b = rng.standard_normal((2, 256))
    lhs = cs_encode(a + b, cfg)
    rhs = cs_encode(a, cfg) + cs_encode(b, cfg)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * np.max(np.abs(lhs))


def test_encode_deterministic(rng):
    x = rng.standard_normal(256)
    cfg = CsConfig(256, 8, seed=9)
    np.testing.assert_array_equal(cs_encode(x, cfg), cs_encode(x, CsConfig(256, 8, seed=9)))


def test_matrix_scaling():
    A = CsConfig(512, 20, 7, seed=1).matrix()
    assert A.shape == (140, 512)
    assert abs(np.mean(np.sum(A**2, axis=0)) - 1) < 0.05


def test_single_atom_recovery():
    x = generate_sparse(128, 1, seed=3)
    cfg = CsConfig(128, 1, 7, seed=3)
    xr = cs_decode(cs_encode(x, cfg), cfg, 1)
    assert np.linalg.norm(xr - x) <= 1e-6 * np.linalg.norm(x)


def test_zero_measurements_decode_to_zero():
    cfg = CsConfig(128, 4)
    assert not np.any(cs_decode(np.zeros(28), cfg))


def test_budget_guard():
    cfg = CsConfig(128, 4)
    with pytest.raises(BadDimensions):
        cs_decode(np.zeros(28), cfg, 15)


def test_no_convergence_when_under_measured():
    x = generate_sparse(256, 20, seed=1)
    cfg = CsConfig(256, 2, 7, seed=1)  # 14 measurements for 20 frequencies
    with pytest.raises(NoConvergence):
        cs_decode(cs_encode(x, cfg), cfg, 2)


def test_reference_scale_recovery():
    x = generate_sparse(1000, 25, seed=5)
    cfg = CsConfig(1000, 25, 7, seed=5)
    xr = cs_decode(cs_encode(x, cfg), cfg)
    assert np.linalg.norm(xr - x) < 1e-6 * np.linalg.norm(x)


def test_plain_pursuit_residual_monotone():
    x = generate_sparse(256, 8, seed=0)
    cfg = CsConfig(256, 8, seed=0)
    C, S = fourier_atoms(256)
    A = cfg.matrix()
    k = np.arange(129)
    res = block_pursuit(cs_encode(x, cfg), A @ C, A @ S, 16, (k != 0) & (k != 128))
    norms = np.array(res.residual_norms)
    assert np.all(np.diff(norms) <= 1e-12 * norms[0])


def test_monte_carlo_recovery_rate():
    ok = 0
    for trial in range(50):
        x = generate_sparse(256, 8, seed=10_000 + trial)
        cfg = CsConfig(256, 8, 7, seed=trial)
        try:
            xr, res = cs_decode(cs_encode(x, cfg), cfg, 16, return_result=True)
        except NoConvergence:
            continue
        norms = np.array(res.residual_norms)
        assert np.all(np.diff(norms) <= 1e-12 * norms[0])
        ok += np.linalg.norm(xr - x) < 1e-4 * np.linalg.norm(x)
    assert ok >= 48
