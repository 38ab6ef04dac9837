from math import gcd

import numpy as np
import pytest

from shattering.filterbank import build_bank
from shattering.matrixform import (
    build_gamma,
    build_stacked,
    convolution_matrix,
    inverse_permutation_matrix,
    permutation_matrix,
    sensing_matrix,
    stacked_to_csv,
)
from shattering.permute import permute
from shattering.shatter import ShatterConfig, sense_all, sense_one, shatter

from conftest import signal_from_bins


def test_permutation_matrix_definition(rng):
    x = rng.standard_normal(16)
    np.testing.assert_array_equal(permutation_matrix(3, 16) @ x, permute(x, 3))


def test_permutation_inverse_exact():
    P = permutation_matrix(3, 16)
    np.testing.assert_array_equal(P @ inverse_permutation_matrix(3, 16), np.eye(16))


def test_all_pass_identity_gamma():
    cfg = ShatterConfig(16, 1, 1)
    gamma = build_gamma(cfg, cfg.bank, 1)
    np.testing.assert_allclose(gamma, sensing_matrix(16), atol=1e-12)


def test_gamma_matches_pipeline_n16(rng):
    cfg = ShatterConfig(16, 4, 3)
    gamma = build_gamma(cfg, cfg.bank, 2)
    for _ in range(20):
        x = rng.standard_normal(16)
        y = np.array(sense_one(shatter(x, cfg)[1], cfg.matrix))
        assert np.max(np.abs(gamma @ x - y)) < 1e-10


def test_gamma_annihilates_other_bands():
    cfg = ShatterConfig(16, 4, 3)
    # bins 1 and 5 land in filters 2 and 1 after permuting, never in filter 4
    x = signal_from_bins(16, {1: 2 + 1j, 5: -1j})
    gamma = build_gamma(cfg, cfg.bank, 4)
    assert np.max(np.abs(gamma @ x)) < 1e-12


def test_stacked_reproduces_encode_measurements(rng):
    cfg = ShatterConfig(16, 4, 3)
    x = rng.standard_normal(16)
    y = build_stacked(cfg) @ x
    y0, y1 = sense_all(x, cfg, validate=False)
    pipeline = np.column_stack([y0, y1]).ravel()
    assert np.max(np.abs(y - pipeline)) < 1e-10


def test_stacked_zero_input():
    assert not np.any(build_stacked(ShatterConfig(16, 4, 3)) @ np.zeros(16))


def test_stacked_shape_reference_size():
    assert build_stacked(ShatterConfig(1000, 100, 11)).shape == (200, 1000)


def test_size_guard():
    with pytest.raises(ValueError):
        build_stacked(ShatterConfig(8192, 4, 1))


def _configs_upto(max_n):
    for n in (8, 16, 32, 64):
        if n > max_n:
            continue
        for t in (1, 2, n // 4, n // 2):
            for s in (1, 3, n - 1):
                if gcd(s, n) == 1:
                    yield n, t, s


@pytest.mark.parametrize("n,t,s", list(_configs_upto(64)))
def test_pipeline_equivalence_exhaustive_over_g(n, t, s, rng):
    cfg = ShatterConfig(n, t, s)
    x = rng.standard_normal(n)
    stacked = build_stacked(cfg)
    y0, y1 = sense_all(x, cfg, validate=False)
    for g in range(t):
        got = stacked[2 * g : 2 * g + 2] @ x
        assert np.max(np.abs(got - [y0[g], y1[g]])) < 1e-10 * np.max(np.abs(x))


@pytest.mark.parametrize("n,t,s", list(_configs_upto(64)))
def test_matrix_partition_of_unity(n, t, s):
    cfg = ShatterConfig(n, t, s)
    P = permutation_matrix(s, n)
    Pinv = inverse_permutation_matrix(s, n)
    total = sum(Pinv @ convolution_matrix(cfg.bank, g) @ P for g in range(1, t + 1))
    assert np.max(np.abs(total - np.eye(n))) < 1e-10


def test_csv_dump(tmp_path):
    cfg = ShatterConfig(8, 2, 3)
    path = tmp_path / "m.csv"
    with open(path, "w") as fh:
        stacked_to_csv(build_stacked(cfg), fh)
    data = np.loadtxt(path, delimiter=",")
    assert data.shape == (4, 16)
    back = data[:, 0::2] + 1j * data[:, 1::2]
    np.testing.assert_array_equal(back, build_stacked(cfg))


def test_bank_argument_is_used():
    cfg = ShatterConfig(16, 4, 3)
    assert build_gamma(cfg, build_bank(16, 4), 1).shape == (2, 16)
