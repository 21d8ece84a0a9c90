import numpy as np
import pytest

from polystab.hyperstab import (Certificate, CertificateError,
                                CertificateFailure, build_certificate,
                                gauss_lucas_transfer, hyper_check,
                                hyper_survey, pencil_form_detect,
                                span_decompose,
                                structural_certificate_cubic,
                                structural_certificate_quadratic)
from polystab.linalg import gen_complex, gen_psd
from polystab.matpoly import MatrixPolynomial, is_stable
from polystab.regions import Region, open_right_half_plane, unit_disc
from polystab.scalarpoly import is_stable_scalar
from polystab.verdict import Verdict
from polystab.verify import load_fixture


def _stable_pencil(seed, region, n=3, tries=200):
    """A seeded pencil lambda*A + B with no eigenvalue in the region."""
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        p = MatrixPolynomial([b, a])
        try:
            if is_stable(p, region).holds:
                return p
        except Exception:
            continue
    raise AssertionError("no stable pencil found")


def test_certificate_reverifies_compression_and_stability():
    disc = unit_disc(closed=True)
    p = MatrixPolynomial([np.diag([2.0, 1.0]), np.diag([1.0, 0.0])])
    cert = hyper_check(p, np.array([1.0, 0.0]), disc, budget=8, seed=0)
    assert isinstance(cert, Certificate)
    recomputed = p.scalar_compress(cert.x, cert.y)
    assert np.abs(recomputed.coeffs - cert.scalar.coeffs).max() <= 1e-12
    assert is_stable_scalar(cert.scalar, disc).status is Verdict.HOLDS


def test_hyper_check_scale_invariance():
    disc = unit_disc(closed=True)
    rhp = open_right_half_plane()
    rng = np.random.default_rng(21)
    p = MatrixPolynomial([gen_psd(3, 1) + np.eye(3), gen_psd(3, 2) + np.eye(3),
                          np.eye(3)])
    for c in (2.0, -0.5 + 1.3j, 1e-3):
        for k in range(3):
            x = np.eye(3)[:, k]
            base = hyper_check(p, x, rhp, budget=8, seed=5)
            scaled = hyper_check(p.scaled(c), x, rhp, budget=8, seed=5)
            assert isinstance(base, Certificate) == isinstance(scaled, Certificate)
            if isinstance(base, Certificate):
                # the same y certifies the scaled polynomial
                assert build_certificate(p.scaled(c), x, base.y, rhp) is not None
    del disc, rng


def test_lemma_transfer_pairs():
    # if Q* P S admits certificates (x, y) then (Sx, Qy) certifies P
    rng = np.random.default_rng(2)
    region = unit_disc(closed=True)
    n = 3
    p = MatrixPolynomial([np.diag([3.0, 4.0, 5.0]), np.eye(n)])  # roots at -3..-5
    s = np.eye(n) + 0.3 * gen_complex(n, 7)
    q = np.eye(n) + 0.3 * gen_complex(n, 8)
    conj = MatrixPolynomial([q.conj().T @ a @ s for a in p.coeffs])
    survey = hyper_survey(conj, region, nx=4, budget=32, seed=0)
    assert survey.verdict == "all-certified"
    for cert in survey.certificates:
        transferred = build_certificate(p, s @ cert.x, q @ cert.y, region)
        assert transferred is not None
    del rng


def test_block_triangular_certificates():
    # block upper-triangular with individually certifiable diagonal blocks
    top = MatrixPolynomial([np.diag([2.0, 3.0]), np.eye(2)])
    bottom = MatrixPolynomial([np.diag([4.0, 5.0]), np.eye(2)])
    region = unit_disc(closed=True)
    coeffs = []
    rng = np.random.default_rng(3)
    for j in range(2):
        block = np.zeros((4, 4), dtype=np.complex128)
        block[:2, :2] = top.coeffs[j]
        block[2:, 2:] = bottom.coeffs[j]
        block[:2, 2:] = rng.standard_normal((2, 2))
        coeffs.append(block)
    p = MatrixPolynomial(coeffs)
    survey = hyper_survey(p, region, nx=6, budget=32, seed=1)
    assert survey.verdict == "all-certified"
    # x supported in the trailing block certifies with y supported there too
    x = np.array([0, 0, 1.0, 0])
    y = np.array([0, 0, 1.0, 0])
    assert build_certificate(p, x, y, region) is not None


def test_stable_pencils_are_always_certified():
    region = unit_disc(closed=True)
    for seed in range(100):
        p = _stable_pencil(seed, region)
        survey = hyper_survey(p, region, nx=3, budget=16, seed=seed)
        assert survey.verdict == "all-certified", f"seed {seed}"


def test_pencil_form_detect_cases():
    # pencil lambda*A + B factors trivially
    a = gen_complex(3, 1)
    b = gen_complex(3, 2)
    pp, qq, amat, bmat = pencil_form_detect(MatrixPolynomial([b, a]))
    recon = np.zeros((2, 3, 3), dtype=np.complex128)
    for k, cf in enumerate(pp.coeffs):
        recon[k] += cf * amat
    for k, cf in enumerate(qq.coeffs):
        recon[k] += cf * bmat
    assert np.abs(recon - np.array([b, a])).max() <= 1e-9
    # three independent coefficients -> no two-matrix structure
    assert pencil_form_detect(load_fixture("example-3.3")) is None


def test_known_counterexample_is_reported_as_failure():
    p = load_fixture("example-3.3")
    disc = unit_disc(closed=True)
    res = hyper_check(p, np.array([0.0, 1.0]), disc, budget=32, seed=0)
    assert isinstance(res, CertificateFailure)
    assert any("budget exhausted" in d for d in res.diagnostics)


def test_budget_zero_is_inconclusive():
    p = load_fixture("example-3.3")
    disc = unit_disc(closed=True)
    res = hyper_check(p, np.array([1.0, 0.0]), disc, budget=0, seed=0)
    assert isinstance(res, CertificateFailure)
    assert any("budget exhausted" in d for d in res.diagnostics)
    survey = hyper_survey(p, disc, nx=2, budget=0, seed=0)
    assert survey.verdict == "inconclusive"
    assert len(survey.failures) == survey.sampled


def test_hyper_check_rejects_zero_x():
    p = load_fixture("example-3.3")
    with pytest.raises(CertificateError):
        hyper_check(p, np.zeros(2), unit_disc())


def test_span_decompose():
    u = np.array([1.0, 0.0, 0.0])
    v = np.array([0.0, 1.0, 0.0])
    dec = span_decompose(2 * u + 3 * v, u, v)
    assert dec.dependent and abs(dec.alpha - 2) <= 1e-10 and abs(dec.beta - 3) <= 1e-10
    out = span_decompose(np.array([0.0, 0.0, 1.0]), u, v)
    assert not out.dependent and out.residual > 0.1


def test_structural_quadratic_certifies_simple_instance():
    region = unit_disc(closed=True)
    # A_0 x = 2 A_2 x + 2 A_1 x, so the variant (a) factor pair is
    # (lambda^2 + 2, lambda + 2), both root-free on the closed unit disc
    p = MatrixPolynomial([4 * np.eye(2), np.eye(2), np.eye(2)])
    out = structural_certificate_quadratic(p, np.array([1.0, 0.0]), region, "a")
    assert isinstance(out, Certificate)
    assert is_stable_scalar(out.scalar, region).status is Verdict.HOLDS
    # variants (b) and (c) require the origin outside the region
    with pytest.raises(CertificateError):
        structural_certificate_quadratic(p, np.array([1.0, 0.0]), region, "b")
    shifted = Region.disc(-2.0 + 0j, 1.0, closed=True)
    stable_elsewhere = MatrixPolynomial([np.eye(2), np.eye(2), np.eye(2)])
    for variant in ("b", "c"):
        out = structural_certificate_quadratic(
            stable_elsewhere, np.array([1.0, 0.0]), shifted, variant)
        if isinstance(out, Certificate):
            assert is_stable_scalar(out.scalar, shifted).status is Verdict.HOLDS


def test_structural_cubic_palindromic_variant_a():
    r0 = gen_psd(3, 1) + 1e-3 * np.eye(3)
    r1 = gen_psd(3, 2)
    r2 = gen_psd(3, 3)
    p = MatrixPolynomial([r0, r1, r2, r0])
    sector = Region.sector(0.0, np.pi / 3)
    rng = np.random.default_rng(0)
    hits = 0
    for _ in range(10):
        x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        x /= np.linalg.norm(x)
        out = structural_certificate_cubic(p, x, sector, "a")
        if isinstance(out, Certificate):
            hits += 1
            assert is_stable_scalar(out.scalar, sector).status is Verdict.HOLDS
    assert hits == 10


def test_gauss_lucas_transfer_exterior_disc():
    region = Region.exterior_disc(10.0)
    p = MatrixPolynomial([np.eye(2), np.array([[2.0, 1.0], [0.0, 2.0]]),
                          np.eye(2)])
    survey = hyper_survey(p, region, nx=4, budget=32, seed=0)
    assert survey.verdict == "all-certified"
    transferred = gauss_lucas_transfer(p, region, survey)
    assert transferred.verdict == "all-certified"
    assert len(transferred.certificates) == len(survey.certificates)


def test_gauss_lucas_transfer_rejects_bad_inputs():
    region = Region.exterior_disc(10.0)
    # derivative of diag(lambda, 1) is singular for every lambda
    p = MatrixPolynomial([np.diag([0.0, 1.0]), np.diag([1.0, 0.0])])
    survey = hyper_survey(p, region, nx=2, budget=16, seed=0)
    with pytest.raises(ValueError):
        gauss_lucas_transfer(p, region, survey)
    # non-convex complement is refused outright
    good = MatrixPolynomial([np.eye(2), np.eye(2), np.eye(2)])
    s2 = hyper_survey(good, region, nx=2, budget=16, seed=0)
    with pytest.raises(ValueError):
        gauss_lucas_transfer(good, unit_disc(), s2)
