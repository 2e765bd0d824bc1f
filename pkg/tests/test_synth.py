import numpy as np
import pytest

from stabsel.synth import DesignSpec, covariance, draw_design, read_ground_truth, write_ground_truth


def test_toeplitz_small():
    S = covariance(DesignSpec(kind="toeplitz", D=3, n_informative=0))
    np.testing.assert_allclose(S, [[1, 0.99, 0.9801], [0.99, 1, 0.99], [0.9801, 0.99, 1]],
                               rtol=1e-15)


def test_four_blocks_entries():
    S = covariance(DesignSpec(kind="four_blocks", D=12, n_informative=0))
    assert S[0, 4] == 0.8 and S[1, 9] == 0.8
    assert S[0, 1] == 0.0 and S[3, 6] == 0.0
    np.testing.assert_array_equal(np.diag(S), 1.0)


def test_correlated_informative():
    spec = DesignSpec(kind="correlated_informative", D=6, n_informative=2, informative=(1, 4))
    S = covariance(spec)
    assert S[1, 4] == 0.9
    assert S[0, 1] == 0.0
    empty = DesignSpec(kind="correlated_informative", D=5, n_informative=0)
    np.testing.assert_array_equal(covariance(empty), np.eye(5))


@pytest.mark.parametrize("kind", ["four_blocks", "toeplitz", "ten_factors", "correlated_informative"])
def test_snr_and_support(kind):
    spec = DesignSpec(kind=kind, N=300, D=120, snr=8.0, seed=4)
    ds, truth = draw_design(spec)
    assert (ds.N, ds.D) == (300, 120)
    assert len(truth.informative) == 20
    assert np.all((truth.beta[list(truth.informative)] > 0) & (truth.beta[list(truth.informative)] <= 1))
    signal = ds.X @ truth.beta
    noise = ds.Y - signal
    assert signal.var() / noise.var() == pytest.approx(8.0, abs=1e-9)


@pytest.mark.parametrize("noise", ["t3", "t5.5"])
def test_student_noise(noise):
    ds, truth = draw_design(DesignSpec(N=200, D=50, noise=noise, seed=1))
    assert (ds.X @ truth.beta).var() / (ds.Y - ds.X @ truth.beta).var() == pytest.approx(2.0)


def test_determinism():
    spec = DesignSpec(N=50, D=40, seed=12)
    a, ta = draw_design(spec)
    b, tb = draw_design(spec)
    np.testing.assert_array_equal(a.X, b.X)
    np.testing.assert_array_equal(a.Y, b.Y)
    np.testing.assert_array_equal(ta.beta, tb.beta)


def test_toeplitz_adjacent_correlation():
    ds, _ = draw_design(DesignSpec(kind="toeplitz", N=500, D=1000, seed=0))
    X = ds.X - ds.X.mean(axis=0)
    X /= np.linalg.norm(X, axis=0)
    adj = np.sum(X[:, :-1] * X[:, 1:], axis=0)
    assert abs(adj.mean() - 0.99) <= 0.02


def test_four_blocks_cross_block_correlation():
    ds, _ = draw_design(DesignSpec(kind="four_blocks", N=500, D=40, seed=0))
    C = np.corrcoef(ds.X, rowvar=False)
    idx = np.arange(40)
    same = (idx[:, None] - idx[None, :]) % 4 == 0
    off = ~same
    assert np.abs(C[off]).max() < 0.2
    assert np.abs(C[off]).mean() < 0.1
    assert abs(C[same & ~np.eye(40, dtype=bool)].mean() - 0.8) < 0.05


def test_grouped_support_windows():
    for seed in range(5):
        _, truth = draw_design(DesignSpec(kind="toeplitz_grouped", N=20, D=600, seed=seed))
        sup = np.array(sorted(truth.informative))
        assert sup.size == 20
        for g in range(1, 6):
            inside = sup[(sup >= 100 * g - 20) & (sup <= 100 * g + 20)]
            assert inside.size == 4


def test_design_errors():
    with pytest.raises(ValueError):
        DesignSpec(kind="nope")
    with pytest.raises(ValueError):
        DesignSpec(D=10, n_informative=11)
    with pytest.raises(ValueError):
        DesignSpec(noise="laplace")
    with pytest.raises(ValueError):
        draw_design(DesignSpec(kind="toeplitz_grouped", N=10, D=500))
    with pytest.raises(ValueError):
        draw_design(DesignSpec(kind="toeplitz_grouped", N=10, D=600, n_informative=10))


def test_ground_truth_round_trip(tmp_path):
    _, truth = draw_design(DesignSpec(N=20, D=30, seed=3))
    p = tmp_path / "gt.csv"
    write_ground_truth(truth, p)
    back = read_ground_truth(p)
    np.testing.assert_array_equal(back.beta, truth.beta)
    assert back.informative == truth.informative
