import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polystab.regions import Region, unit_disc
from polystab.scalarpoly import (ScalarMultivariatePolynomial,
                                 ScalarPolynomial, ZeroPolynomialError,
                                 count_roots_in_disc, is_stable_scalar, roots)
from polystab.verdict import Verdict

finite_complex = st.builds(
    complex,
    st.floats(-3.0, 3.0, allow_nan=False),
    st.floats(-3.0, 3.0, allow_nan=False))


def test_roots_against_numpy_oracle():
    rng = np.random.default_rng(1)
    for _ in range(200):
        deg = int(rng.integers(1, 10))
        c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
        p = ScalarPolynomial(c)
        ours = sorted(roots(p), key=lambda z: (z.real, z.imag))
        ref = sorted(np.roots(c[::-1]), key=lambda z: (z.real, z.imag))
        assert max(abs(a - b) for a, b in zip(ours, ref)) <= 1e-6


@settings(max_examples=60, deadline=None)
@given(st.lists(finite_complex, min_size=1, max_size=6))
def test_from_roots_recovers_roots(rts):
    p = ScalarPolynomial.from_roots(rts)
    found = list(roots(p))
    # match every prescribed root against the nearest computed one; a root
    # of multiplicity m is only determined to roughly eps**(1/m)
    for r in rts:
        assert min(abs(r - f) for f in found) <= 5e-3


def test_roots_rejects_zero_polynomial():
    with pytest.raises(ZeroPolynomialError):
        roots(ScalarPolynomial.zero())


def test_count_roots_matches_direct_count():
    rng = np.random.default_rng(2)
    for _ in range(50):
        deg = int(rng.integers(1, 9))
        c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
        p = ScalarPolynomial(c)
        rts = list(roots(p))
        # pick a radius keeping the contour clear of every root
        for radius in (0.5, 1.0, 2.0, 3.0):
            if min(abs(abs(r) - radius) for r in rts) > 1e-3:
                break
        else:
            continue
        direct = sum(abs(r) < radius for r in rts)
        assert count_roots_in_disc(p, 0j, radius) == direct


def test_is_stable_scalar_boundary_closure_rule():
    p = ScalarPolynomial.from_roots([1.0 + 0j])  # root on the unit circle
    assert is_stable_scalar(p, unit_disc(closed=True)).status is Verdict.VIOLATED
    assert is_stable_scalar(p, unit_disc(closed=False)).status is Verdict.HOLDS
    q = ScalarPolynomial.from_roots([0.5 + 0j])
    assert is_stable_scalar(q, unit_disc(closed=False)).status is Verdict.VIOLATED
    assert is_stable_scalar(q, Region.exterior_disc(1.0)).status is Verdict.HOLDS


def test_arithmetic_and_compose():
    p = ScalarPolynomial([1, 2, 3])
    q = ScalarPolynomial([0, 1])
    assert (p * 2).coeffs[2] == 6
    comp = p.compose(ScalarPolynomial([1, 1]))  # p(1 + lambda)
    assert abs(comp.eval(0.0) - p.eval(1.0)) <= 1e-12
    assert abs((p.derivative()).eval(2.0) - (2 + 12.0)) <= 1e-12
    assert q.degree == 1 and p.degree == 2


def test_multivariate_eval_symmetry_and_diagonal():
    # q(z1, z2) = z1 z2 + (z1 + z2) / 2 is symmetric and multi-affine
    q = ScalarMultivariatePolynomial(2, {(1, 1): 1.0, (1, 0): 0.5, (0, 1): 0.5})
    assert q.is_symmetric()
    assert q.is_multi_affine()
    assert abs(q.eval((2.0, 3.0)) - (6.0 + 2.5)) <= 1e-12
    diag = q.diagonal()
    assert abs(diag.eval(2.0) - q.eval((2.0, 2.0))) <= 1e-12
    asym = ScalarMultivariatePolynomial(2, {(1, 0): 1.0})
    assert not asym.is_symmetric()
    quad = ScalarMultivariatePolynomial(2, {(2, 0): 1.0, (0, 2): 1.0})
    assert not quad.is_multi_affine()
