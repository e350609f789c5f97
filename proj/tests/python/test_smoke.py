import numpy as np
import pytest

import lapden


def test_operators():
    d0 = lapden.d0_matrix(3, 0.5)
    assert np.array_equal(d0, 4 * np.array([[-1, 1, 0], [1, -2, 1], [0, 1, -1]]))
    d1 = lapden.d1_matrix(3, 1.0)
    assert np.array_equal(d1, [[-2, 1, 0], [1, -2, 1], [0, 1, -2]])
    lap = lapden.laplacian_2d(np.ones((4, 4)), kind="dirichlet")
    assert lap[0, 0] == -2.0
    assert lapden.stable_step_bound(1.0, 1.0, 0.5, 0.0) == pytest.approx(0.125)


def test_denoise_1d_improves_noisy_sine():
    clean = lapden.sample_f_sine(100)
    noisy = lapden.add_noise(clean, seed=1, delta_rel=0.09)
    assert np.linalg.norm(noisy - clean) / np.linalg.norm(clean) == pytest.approx(0.09, abs=1e-12)
    restored, trace = lapden.denoise_1d(noisy, solver="semi-implicit")
    assert trace["converged"]
    assert len(trace["residual_history"]) == trace["iters_run"]
    assert lapden.compute_metrics(restored, clean)["rel_err"] < 0.09
    tv, tv_trace = lapden.tv_denoise_1d(noisy, lambda_=10.0)
    assert tv_trace["converged"]
    assert lapden.compute_metrics(tv, clean)["rel_err"] < 0.09


def test_denoise_2d_and_constants():
    flat = np.full((6, 6), 0.25)
    out, trace = lapden.denoise_2d(flat)
    assert trace["iters_run"] == 1
    assert np.array_equal(out, flat)
    clean = lapden.sample_f2d(64)
    noisy = lapden.add_noise(clean, seed=2, delta_rel=0.05)
    restored, _ = lapden.denoise_2d(noisy, lambda_=10.0)
    assert restored.shape == clean.shape
    assert np.linalg.norm(restored - clean) < np.linalg.norm(noisy - clean)
    tv, _ = lapden.tv_denoise_2d(noisy, lambda_=30.0)
    assert tv.shape == clean.shape


def test_errors_map_to_python_exceptions():
    with pytest.raises(lapden.LapdenError):
        lapden.denoise_1d(np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        lapden.denoise_1d(np.zeros(10), epsilon=-1.0)
    with pytest.raises(lapden.DivergenceError):
        lapden.denoise_1d(lapden.gaussian_noise(32, 3), dt=100.0)
    with pytest.raises(lapden.LapdenError):
        lapden.run_experiment("fig9")


def test_file_round_trips(tmp_path):
    values = np.array([1.5, -2.0, 3.25, 0.1])
    lapden.write_csv(tmp_path / "s.csv", values, h=0.5)
    back, h, a = lapden.read_csv(tmp_path / "s.csv")
    assert np.array_equal(back, values)
    assert h == 0.5 and a == 0.0
    field = np.random.default_rng(0).random((5, 7))
    lapden.write_pgm(tmp_path / "f.pgm", field)
    assert np.max(np.abs(lapden.read_pgm(tmp_path / "f.pgm") - field)) <= 1 / 510


def test_experiment():
    r = lapden.run_experiment("fig2", seed=1)
    assert r["nl"]["rel_err"] < r["noisy"]["rel_err"]
    assert r["tv"]["plateau_fraction"] > r["nl"]["plateau_fraction"]
    assert r["artifacts"] == []
