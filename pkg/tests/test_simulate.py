"""Simulation oracle: trace synthesis, channel runs, empirical estimates."""

import math

import numpy as np
import pytest

from fadingrate.model import ChannelParams, Jakes, RaisedCosine, Rectangular
from fadingrate.prediction import PowerProfile, ToeplitzCov, pred_error_finite
from fadingrate.quadrature import g_logmoment
from fadingrate.mcrates import coherent_mi_cm
from fadingrate.simulate import (
    FadingRealization,
    SimConfig,
    empirical_coherent_mi,
    empirical_pred_error,
    gen_fading,
    gen_fading_batch,
    read_fading_dump,
    simulate_channel,
    write_fading_dump,
)


def _lag_cov(batch, lag):
    # sample E[h_{k+lag} conj(h_k)] averaged over realizations and offsets;
    # the per-realization means feed the standard error of the estimate
    prods = (batch[:, lag:] * np.conj(batch[:, : batch.shape[1] - lag])).real
    per_real = prods.mean(axis=1)
    mean = float(per_real.mean())
    stderr = math.sqrt(float(per_real.var()) / len(per_real))
    return mean, stderr


@pytest.mark.parametrize("method", ["embedding", "cholesky"])
def test_same_seed_reproduces_bitwise(method):
    model = Rectangular(0.15)
    a = gen_fading(model, 128, 5, method=method)
    b = gen_fading(model, 128, 5, method=method)
    assert np.array_equal(a.h, b.h)
    c = gen_fading(model, 128, 6, method=method)
    assert not np.array_equal(a.h, c.h)
    assert a.seed == 5 and a.model == model


@pytest.mark.parametrize("method", ["embedding", "cholesky"])
def test_batch_row_zero_matches_single(method):
    # the slowly decaying Jakes autocorrelation needs a large circulant
    # embedding, so the short-trace case runs through the direct factor
    model = Rectangular(0.25) if method == "embedding" else Jakes(0.2)
    batch = gen_fading_batch(model, 64, 5, seed=9, method=method)
    single = gen_fading(model, 64, 9, method=method)
    assert batch.shape == (5, 64)
    assert np.array_equal(batch[0], single.h)


@pytest.mark.parametrize(
    "model,n",
    [
        (Rectangular(0.15), 256),
        (Jakes(0.2, sigma_h2=1.5), 512),
        (RaisedCosine(0.1, 0.2), 256),
    ],
    ids=["rect", "jakes", "rc"],
)
def test_traces_obey_autocorrelation(model, n):
    for attempt, n_real in enumerate((400, 1600)):
        batch = gen_fading_batch(model, n, n_real, seed=17)
        ok = True
        for lag in (0, 1, 3):
            mean, stderr = _lag_cov(batch, lag)
            if abs(mean - model.autocorr(lag)) > 4.0 * stderr:
                ok = False
        if ok:
            return
    pytest.fail("sample autocovariance outside 4 sigma at 1600 realizations")


def test_cholesky_and_embedding_agree_in_law():
    model = Rectangular(0.1)
    a = gen_fading_batch(model, 512, 400, seed=3, method="embedding")
    b = gen_fading_batch(model, 512, 400, seed=1003, method="cholesky")
    for lag in range(6):
        ma, sa = _lag_cov(a, lag)
        mb, sb = _lag_cov(b, lag)
        assert abs(ma - mb) <= 4.0 * math.hypot(sa, sb)


def test_generation_validation():
    model = Rectangular(0.1)
    with pytest.raises(ValueError):
        gen_fading(model, 1, 0)
    with pytest.raises(ValueError):
        gen_fading(model, 4096, 0, method="cholesky")
    with pytest.raises(ValueError):
        gen_fading(model, 64, 0, method="spectral")
    with pytest.raises(ValueError):
        gen_fading_batch(model, 64, 0, seed=0)
    with pytest.raises(ValueError, match="negative mass"):
        gen_fading(Jakes(0.2), 64, 0)  # embedding infeasible at short lengths


def test_channel_run_noiseless_is_exact():
    real = gen_fading(Rectangular(0.1), 32, 0)
    x = np.exp(1j * np.linspace(0.0, 3.0, 32))
    y = simulate_channel(real, x, 0.0, seed=1)
    assert np.array_equal(y, real.h * x)


def test_channel_run_noise_power():
    real = FadingRealization(h=np.zeros(200_000, dtype=complex), model=Rectangular(0.1), seed=0)
    y = simulate_channel(real, np.zeros(200_000), 2.0, seed=4)
    assert float(np.mean(np.abs(y) ** 2)) == pytest.approx(2.0, rel=0.02)


def test_channel_run_validation():
    real = gen_fading(Rectangular(0.1), 32, 0)
    with pytest.raises(ValueError):
        simulate_channel(real, np.ones(16), 1.0, seed=0)
    with pytest.raises(ValueError):
        simulate_channel(real, np.ones(32), -1.0, seed=0)


def test_empirical_prediction_matches_analytic():
    model = Rectangular(0.1)
    z = PowerProfile((1.0, 1.0, 1.0))
    analytic = pred_error_finite(ToeplitzCov.from_model(model, 4), z, 1.0)
    for attempt, n_real in enumerate((1500, 6000)):
        est = empirical_pred_error(model, z, 1.0, n_real, seed=23 + attempt)
        if abs(est.mean - analytic) <= 4.0 * est.stderr:
            return
    pytest.fail("empirical prediction error outside 4 sigma after retry")


def test_empirical_prediction_empty_past():
    model = Rectangular(0.2, sigma_h2=1.3)
    est = empirical_pred_error(model, PowerProfile(()), 1.0, 2000, seed=2)
    assert abs(est.mean - 1.3) <= 4.0 * est.stderr


def test_empirical_prediction_validation():
    model = Rectangular(0.1)
    with pytest.raises(ValueError):
        empirical_pred_error(model, PowerProfile((1.0,)), 0.0, 100, seed=0)
    with pytest.raises(ValueError):
        empirical_pred_error(model, PowerProfile((1.0,)), 1.0, 1, seed=0)
    with pytest.raises(ValueError):
        empirical_pred_error(model, PowerProfile((1.0,) * 2100), 1.0, 10, seed=0)


def test_empirical_pg_capacity():
    est = empirical_coherent_mi(1.0, "pg", 1_000_000, seed=0)
    assert abs(est.mean - g_logmoment(1.0)) <= 4.0 * est.stderr
    assert est.mean == pytest.approx(0.596347, abs=4.0 * est.stderr)


def test_empirical_cm_agrees_with_reduced_estimator():
    # the fully drawn estimator (random symbol, complex fading) and the
    # symmetry-reduced one must estimate the same number
    a = empirical_coherent_mi(2.0, ("cm", 16), 50_000, seed=5)
    b = coherent_mi_cm(2.0, m_points=16, n=50_000, seed=6)
    assert abs(a.mean - b.mean) <= 4.0 * math.hypot(a.stderr, b.stderr)


def test_empirical_mi_validation():
    with pytest.raises(ValueError):
        empirical_coherent_mi(1.0, "pg", 100, seed=0)
    with pytest.raises(ValueError):
        empirical_coherent_mi(-1.0, "pg", 20_000, seed=0)
    with pytest.raises(ValueError):
        empirical_coherent_mi(1.0, ("cm", 1), 20_000, seed=0)
    with pytest.raises(ValueError):
        empirical_coherent_mi(1.0, "qam", 20_000, seed=0)


def test_dump_round_trip(tmp_path):
    model = Rectangular(0.1)
    batch = gen_fading_batch(model, 64, 3, seed=11)
    path = tmp_path / "trace.fade"
    write_fading_dump(path, batch, model, 11)
    back, meta = read_fading_dump(path)
    assert back.shape == (3, 64)
    assert meta == {"version": 1, "n": 64, "f_d": 0.1, "seed": 11}
    # storage is complex64: single precision relative accuracy
    assert np.max(np.abs(back - batch)) <= 1e-6 * np.max(np.abs(batch))


def test_dump_single_trace_promotes_to_matrix(tmp_path):
    model = Rectangular(0.2)
    real = gen_fading(model, 32, 4)
    path = tmp_path / "one.fade"
    write_fading_dump(path, real.h, model, 4)
    back, meta = read_fading_dump(path)
    assert back.shape == (1, 32)
    assert meta["f_d"] == 0.2


def test_dump_rejects_corruption(tmp_path):
    model = Rectangular(0.1)
    path = tmp_path / "trace.fade"
    write_fading_dump(path, gen_fading_batch(model, 16, 2, seed=0, method="cholesky"), model, 0)
    raw = bytearray(path.read_bytes())

    bad_magic = tmp_path / "magic.fade"
    bad_magic.write_bytes(b"JUNK" + bytes(raw[4:]))
    with pytest.raises(ValueError, match="bad magic"):
        read_fading_dump(bad_magic)

    bad_version = tmp_path / "version.fade"
    tampered = bytearray(raw)
    tampered[4] = 99
    bad_version.write_bytes(bytes(tampered))
    with pytest.raises(ValueError, match="version"):
        read_fading_dump(bad_version)

    truncated = tmp_path / "short.fade"
    truncated.write_bytes(bytes(raw[:-5]))
    with pytest.raises(ValueError, match="truncated"):
        read_fading_dump(truncated)


def test_sim_config_validation():
    cfg = SimConfig()
    assert cfg.n_symbols == 1024 and cfg.input_kind == "pg"
    with pytest.raises(ValueError):
        SimConfig(n_symbols=1)
    with pytest.raises(ValueError):
        SimConfig(n_realizations=0)
