import numpy as np
import pytest

from polystab.linalg import gen_psd
from polystab.matpoly import (IrregularPolynomialError, MatrixPolynomial,
                              MultivariateMatrixPolynomial,
                              determinant_polynomial, eigenvalues,
                              entries_linearly_independent, instance_from_dict,
                              instance_to_dict, is_stable, mv_stability_sample,
                              numerical_range_sample, szasz_bound)
from polystab.regions import Region, open_right_half_plane, unit_disc
from polystab.scalarpoly import ScalarPolynomial
from polystab.verdict import Verdict


def _random_poly(rng, n, d):
    c = rng.standard_normal((d + 1, n, n)) + 1j * rng.standard_normal((d + 1, n, n))
    return MatrixPolynomial(c)


def test_determinant_polynomial_matches_pointwise_det():
    rng = np.random.default_rng(4)
    for _ in range(30):
        n = int(rng.integers(1, 5))
        d = int(rng.integers(1, 4))
        p = _random_poly(rng, n, d)
        dp = determinant_polynomial(p)
        for z in rng.standard_normal(5) + 1j * rng.standard_normal(5):
            ref = np.linalg.det(p.eval(z))
            # small coefficients get flushed relative to the determinant's
            # overall scale, so compare at that scale as well
            scale = max(1.0, dp.norm()) * max(1.0, abs(z)) ** dp.degree
            assert abs(dp.eval(z) - ref) <= 1e-8 * scale


def test_eigenvalues_match_diagonal_oracle():
    # P = diag(lambda - r_k) has exactly the prescribed spectrum
    rng = np.random.default_rng(9)
    rts = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    a0 = np.diag(-rts)
    a1 = np.eye(4)
    rep = eigenvalues(MatrixPolynomial([a0, a1]))
    assert rep.regular and rep.drop_in_degree == 0
    got = sorted(rep.eigenvalues, key=lambda z: (z.real, z.imag))
    want = sorted(rts, key=lambda z: (z.real, z.imag))
    assert max(abs(a - b) for a, b in zip(got, want)) <= 1e-10


def test_degree_drop_with_singular_leading_coefficient():
    # det = lambda while n*d = 2, so one eigenvalue escapes to infinity
    p = MatrixPolynomial([np.diag([0.0, 1.0]), np.diag([1.0, 0.0])])
    rep = eigenvalues(p)
    assert rep.regular and rep.drop_in_degree == 1
    assert len(rep.eigenvalues) == 1 and abs(rep.eigenvalues.roots[0]) <= 1e-10


def test_irregular_polynomial_detection():
    ones = np.ones((2, 2))
    rep = eigenvalues(MatrixPolynomial([ones, ones]))
    assert not rep.regular
    with pytest.raises(IrregularPolynomialError):
        is_stable(MatrixPolynomial([ones, ones]), unit_disc())


def test_is_stable_closure_rule():
    # single eigenvalue at 1 sits on the unit circle
    p = MatrixPolynomial([np.array([[-1.0]]), np.array([[1.0]])])
    assert is_stable(p, unit_disc(closed=True)).status is Verdict.VIOLATED
    assert is_stable(p, unit_disc(closed=False)).status is Verdict.HOLDS
    assert is_stable(p, Region.disc(0j, 0.5)).status is Verdict.HOLDS
    inside = MatrixPolynomial([np.array([[-0.2]]), np.array([[1.0]])])
    v = is_stable(inside, unit_disc(closed=False))
    assert v.status is Verdict.VIOLATED and abs(v.witness - 0.2) <= 1e-10


def test_matmul_is_coefficient_convolution():
    rng = np.random.default_rng(12)
    p = _random_poly(rng, 3, 2)
    q = _random_poly(rng, 3, 3)
    prod = p @ q
    for z in (0.3 + 1j, -2.0, 0.5j):
        ref = p.eval(z) @ q.eval(z)
        assert np.abs(prod.eval(z) - ref).max() <= 1e-10 * max(1.0, np.abs(ref).max())


def test_entries_linearly_independent():
    lam = ScalarPolynomial([0, 1])
    dep = MatrixPolynomial([np.array([[1.0, 1.0], [0.0, 0.0]]),
                            np.array([[0.0, 0.0], [1.0, 1.0]])])
    assert not entries_linearly_independent(dep)
    rng = np.random.default_rng(5)
    indep = _random_poly(rng, 2, 3)
    assert entries_linearly_independent(indep)
    del lam


def test_szasz_bound_requirements_and_validity():
    rng = np.random.default_rng(6)
    h1 = gen_psd(3, 1) + 0.1 * np.eye(3)
    h2 = gen_psd(3, 2) + 0.1 * np.eye(3)
    p = MatrixPolynomial([np.eye(3), 1j * h1, -h2])
    for z in rng.standard_normal(20) + 1j * rng.standard_normal(20):
        norm = np.linalg.svd(p.eval(z), compute_uv=False)[0]
        assert norm <= szasz_bound(p, z) * (1 + 1e-9)
    with pytest.raises(ValueError):
        szasz_bound(MatrixPolynomial([2 * np.eye(2), np.eye(2)]), 1.0)
    big = MatrixPolynomial([np.eye(2), 100.0 * np.eye(2)])
    assert szasz_bound(big, 100.0) == float("inf")


def test_numerical_range_sample_points_are_compression_roots():
    rng = np.random.default_rng(8)
    p = _random_poly(rng, 3, 2)
    s1 = numerical_range_sample(p, 50, seed=3)
    s2 = numerical_range_sample(p, 50, seed=3)
    assert np.array_equal(s1.points, s2.points)
    for z, x in zip(s1.points, s1.generators):
        val = x.conj() @ p.eval(z) @ x
        assert abs(val) <= 1e-7 * max(1.0, p.coefficient_norm())


def test_instance_serialization_round_trip():
    rng = np.random.default_rng(10)
    p = _random_poly(rng, 2, 3)
    back = instance_from_dict(instance_to_dict(p))
    assert np.array_equal(back.coeffs, p.coeffs)
    mv = MultivariateMatrixPolynomial(2, 2, {
        (1, 1): np.eye(2) + 0j, (0, 0): np.diag([1.0, -1.0]) + 0j})
    back_mv = instance_from_dict(instance_to_dict(mv))
    assert back_mv.kappa == 2
    assert set(back_mv.terms) == set(mv.terms)
    for key in mv.terms:
        assert np.array_equal(back_mv.terms[key], mv.terms[key])


def test_mv_stability_sample_verdicts():
    # Q(z1, z2) = diag(1, z1 z2 - 1) is singular exactly on z1 z2 = 1
    sing = MultivariateMatrixPolynomial(2, 2, {
        (1, 1): np.diag([0.0, 1.0]) + 0j,
        (0, 0): np.diag([1.0, -1.0]) + 0j})
    disc2 = Region.power(Region.disc(0j, 2.0, closed=True), 2)
    hit = mv_stability_sample(sing, disc2, 300, seed=0)
    assert hit.status is Verdict.VIOLATED
    z1, z2 = hit.witness
    assert abs(z1 * z2 - 1.0) <= 1e-6
    # I + z1 z2 E with tiny E never becomes singular on the closed bidisc
    safe = MultivariateMatrixPolynomial(2, 2, {
        (1, 1): 0.01 * np.eye(2) + 0j, (0, 0): np.eye(2) + 0j})
    bidisc = Region.power(unit_disc(closed=True), 2)
    assert mv_stability_sample(safe, bidisc, 100, seed=0).status is Verdict.HOLDS


def test_rhp_stability_of_damped_instance():
    # strictly dissipative quadratic keeps the spectrum in the open LHP
    r = gen_psd(3, 3) + np.eye(3)
    p = MatrixPolynomial([r, r, np.eye(3)])
    assert is_stable(p, open_right_half_plane()).status is Verdict.HOLDS
