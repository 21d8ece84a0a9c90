"""Polarization of matrix polynomials and product-region witnesses.

The polarization of P(lambda) = sum_j lambda^j A_j in kappa >= deg P
variables replaces lambda^j by the normalized elementary symmetric
polynomial s_j(z) / binom(kappa, j).  The result is the unique symmetric
multi-affine matrix polynomial whose diagonal restriction recovers P.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .matpoly import MatrixPolynomial, MultivariateMatrixPolynomial
from .regions import Region, DEFAULT_BOUNDARY_TOL
from .scalarpoly import ScalarPolynomial, roots

MAX_POLARIZATION_ARITY = 8


class PolarizationError(ValueError):
    pass


@dataclass
class PolarizedPolynomial:
    base: MatrixPolynomial
    kappa: int
    result: MultivariateMatrixPolynomial

    def eval(self, mu):
        return self.result.eval(mu)

    def scalar_compress(self, x, y):
        return self.result.scalar_compress(x, y)


def _elementary_symmetric_all(values):
    """s_0..s_k of the given numbers, by expanding prod_i (t + z_i).

    The product recurrence is numerically mild and O(k^2); no power sums
    or divisions are involved.
    """
    coeffs = np.array([1.0 + 0j])
    for z in values:
        nxt = np.zeros(len(coeffs) + 1, dtype=np.complex128)
        nxt[: len(coeffs)] += coeffs * complex(z)
        nxt[1:] += coeffs
        coeffs = nxt
    return coeffs[::-1].copy()  # s_j multiplies t^(k-j)


def elementary_symmetric(j, values):
    """The j-th elementary symmetric polynomial of the given numbers."""
    values = list(values)
    if not 0 <= j <= len(values):
        raise ValueError(f"index {j} out of range for {len(values)} values")
    return complex(_elementary_symmetric_all(values)[j])


def polarize(p, kappa=None):
    """T_kappa P: the symmetric multi-affine lift of P into kappa variables."""
    if not isinstance(p, MatrixPolynomial):
        raise TypeError("polarize expects a univariate matrix polynomial")
    d = p.degree
    if kappa is None:
        kappa = d
    kappa = int(kappa)
    if kappa < max(d, 1):
        raise PolarizationError(f"arity {kappa} is below the degree {d}")
    if kappa > MAX_POLARIZATION_ARITY:
        raise PolarizationError(
            f"arity {kappa} exceeds the supported cap {MAX_POLARIZATION_ARITY}")
    terms = {}
    for j in range(d + 1):
        if not p.coeffs[j].any():
            continue
        weight = 1.0 / math.comb(kappa, j)
        for subset in itertools.combinations(range(kappa), j):
            expo = tuple(1 if i in subset else 0 for i in range(kappa))
            terms[expo] = p.coeffs[j] * weight
    return PolarizedPolynomial(
        p, kappa, MultivariateMatrixPolynomial(p.n, kappa, terms))


def restrict_diagonal(q):
    """Inverse of polarization: substitute one lambda for every variable."""
    if isinstance(q, PolarizedPolynomial):
        q = q.result
    if not isinstance(q, MultivariateMatrixPolynomial):
        raise TypeError("restrict_diagonal expects a multivariate matrix polynomial")
    deg = q.total_degree()
    coeffs = np.zeros((deg + 1, q.n, q.n), dtype=np.complex128)
    for expo, mat in q.terms.items():
        coeffs[sum(expo)] += mat
    return MatrixPolynomial(coeffs)


def _circular(region):
    return region.kind in ("disc", "halfplane")


def gws_witness(q, zeta, region, tol=DEFAULT_BOUNDARY_TOL):
    """Diagonal point matching a product-region value of a symmetric multi-affine q.

    Given zeta in D^kappa, returns lambda in D (closure-aware) with
    q(lambda, ..., lambda) = q(zeta).  Requires q symmetric and multi-affine
    and D a disc or half-plane; among the qualifying roots the one deepest
    inside D is returned, ties broken lexicographically by (Re, Im).
    """
    if not _circular(region):
        raise PolarizationError("witness extraction needs a disc or half-plane")
    if not q.is_multi_affine():
        raise PolarizationError("q must be multi-affine")
    rng = np.random.default_rng(0)
    if not q.is_symmetric(rng=rng):
        raise PolarizationError("q must be symmetric")
    zeta = [complex(z) for z in zeta]
    if len(zeta) != q.kappa:
        raise ValueError(f"expected {q.kappa} coordinates, got {len(zeta)}")
    for z in zeta:
        if not region.includes(z, tol):
            raise ValueError("zeta must lie in the product region")
    v = q.eval(zeta)
    diag = q.diagonal() - ScalarPolynomial([v])
    if diag.is_zero() or diag.degree == 0:
        if diag.norm() > 0:
            raise PolarizationError(
                "numerical anomaly: diagonal restriction misses the target value")
        return zeta[0]
    candidates = [complex(r) for r in roots(diag) if region.includes(r, tol)]
    if not candidates:
        raise PolarizationError(
            "numerical anomaly: no diagonal root inside the region")
    candidates.sort(key=lambda z: (-region.boundary_distance(z), z.real, z.imag))
    return candidates[0]


def degree_transform(p, kappa, substitutions):
    """Compose the polarization with scalar substitutions z_j = p_j(lambda).

    Returns (Q, region_builder): Q(lambda) = (T_kappa P)(p_1(lambda), ...)
    as a univariate matrix polynomial, and a builder mapping a base region
    D to the intersection of the preimages p_j^{-1}(D), which is where the
    transferred exclusion statements live.
    """
    substitutions = list(substitutions)
    if len(substitutions) != int(kappa):
        raise ValueError(
            f"need {kappa} substitution polynomials, got {len(substitutions)}")
    lifted = polarize(p, kappa)
    deg = 0
    pieces = []
    for expo, mat in lifted.result.terms.items():
        mono = ScalarPolynomial([1.0])
        for e, q in zip(expo, substitutions):
            for _ in range(e):
                mono = mono * q
        pieces.append((mono, mat))
        deg = max(deg, mono.degree)
    coeffs = np.zeros((deg + 1, p.n, p.n), dtype=np.complex128)
    for mono, mat in pieces:
        for k, c in enumerate(mono.coeffs):
            if c != 0:
                coeffs[k] += c * mat
    out = MatrixPolynomial(coeffs)

    def region_builder(base_region):
        return Region.intersection(
            Region.preimage(q, base_region) for q in substitutions)

    return out, region_builder
