import pytest

from shattering.bench import (
    CONVENTIONAL,
    SHATTERING,
    SWEEP_FIELDS,
    cost_model,
    rows_to_csv,
    sweep_measurements,
    table1,
)


def test_cost_model_shattering_m5():
    r = cost_model(SHATTERING, 1000, t=100, r=5)
    assert (r.stored_real_measurements, r.additions, r.multiplications) == (20, 399600, 400000)


def test_cost_model_shattering_m25():
    assert cost_model(SHATTERING, 1000, t=100, r=25).stored_real_measurements == 100


def test_cost_model_conventional():
    r = cost_model(CONVENTIONAL, 1000, n_measurements=175)
    assert (r.stored_real_measurements, r.additions, r.multiplications) == (175, 174825, 175000)


def test_cost_model_unknown():
    with pytest.raises(ValueError):
        cost_model("magic", 10)


def test_headline_tradeoff_inequality():
    for m2 in range(1, 60):
        cs = cost_model(CONVENTIONAL, 1000, n_measurements=7 * m2)
        for r in range(0, m2 + 1):
            sh = cost_model(SHATTERING, 1000, t=100, r=r)
            assert cs.stored_real_measurements > sh.stored_real_measurements


def test_table1_rows():
    rows = table1()
    assert [r["m"] for r in rows] == [5, 25]
    assert [r["meas_cs"] for r in rows] == [175, 175]
    assert [r["meas_shatter"] for r in rows] == [20, 100]
    assert all(r["max_abs_err_shatter"] < 1e-11 for r in rows)


def test_sweep_small():
    rows = sweep_measurements(1024, 128, [0, 4, 8, 16], multiplier=6, seeds=(0, 1))
    assert [(r.m, r.seed) for r in rows] == [(m, s) for m in (0, 4, 8, 16) for s in (0, 1)]
    for r in rows:
        assert r.stored_cs == 96
        if r.status == "ok":
            assert r.stored_shatter == 4 * r.m
            assert r.max_abs_err_shatter < 1e-9
    assert rows[0].stored_shatter == 0


def test_sweep_records_failures():
    rows = sweep_measurements(64, 8, [8], multiplier=2, seeds=range(6))
    statuses = {r.status for r in rows}
    assert statuses <= {"ok", "NoValidSigma"}
    assert "NoValidSigma" in statuses
    failed = [r for r in rows if r.status != "ok"]
    assert all(r.stored_shatter is None and r.sigma is None for r in failed)


def test_sweep_parallel_matches_serial():
    kw = dict(multiplier=6, seeds=range(3))
    a = sweep_measurements(512, 64, [4, 16, 32], n_jobs=1, **kw)
    b = sweep_measurements(512, 64, [4, 16, 32], n_jobs=4, **kw)
    assert rows_to_csv(a) == rows_to_csv(b)


def test_sweep_csv_is_reproducible():
    kw = dict(multiplier=6, seeds=(3,), support="clustered")
    a = rows_to_csv(sweep_measurements(1024, 128, [4, 32, 64], **kw), SWEEP_FIELDS)
    b = rows_to_csv(sweep_measurements(1024, 128, [4, 32, 64], **kw), SWEEP_FIELDS)
    assert a == b
    assert a.splitlines()[0] == ",".join(SWEEP_FIELDS)


def test_sweep_rejects_m_above_t():
    with pytest.raises(ValueError):
        sweep_measurements(64, 4, [8])
