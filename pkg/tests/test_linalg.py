import numpy as np
import pytest

from polystab import linalg


def test_sigma_min_never_exceeds_spectral_norm():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        n = rng.integers(1, 6)
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        assert linalg.sigma_min(a) <= linalg.spectral_norm(a) + 1e-12


def test_sigma_min_and_norm_match_svd_oracle():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    sv = np.linalg.svd(a, compute_uv=False)
    assert abs(linalg.sigma_min(a) - sv[-1]) <= 1e-12
    assert abs(linalg.spectral_norm(a) - sv[0]) <= 1e-12


def test_lambda_H_is_largest_hermitian_part_eigenvalue():
    rng = np.random.default_rng(11)
    a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    herm = (a + a.conj().T) / 2
    assert abs(linalg.lambda_H(a) - np.linalg.eigvalsh(herm)[-1]) <= 1e-12


def test_hermitian_eigenvalues_rejects_non_hermitian():
    with pytest.raises(ValueError):
        linalg.hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_gen_psd_is_psd_and_deterministic():
    a = linalg.gen_psd(4, 42)
    b = linalg.gen_psd(4, 42)
    assert np.array_equal(a, b)
    assert np.allclose(a, a.conj().T)
    assert np.linalg.eigvalsh(a).min() >= -1e-12


def test_gen_skew_variants():
    s = linalg.gen_skew(4, 5)
    assert np.allclose(s, -s.conj().T)
    sp = linalg.gen_skew(4, 5, psd=True)
    assert np.allclose(sp, -sp.conj().T)
    # -i * sp must be PSD
    assert np.linalg.eigvalsh(-1j * sp).min() >= -1e-12


def test_gen_unit_vector_has_unit_norm():
    rng = np.random.default_rng(0)
    for _ in range(20):
        v = linalg.gen_unit_vector(6, rng)
        assert abs(np.linalg.norm(v) - 1.0) <= 1e-12
