"""Scalar complex polynomials: arithmetic, roots, and region-stability verdicts."""

import numpy as np

from . import _kernels
from .regions import Membership, DEFAULT_BOUNDARY_TOL
from .verdict import StabilityVerdict, Verdict

ROOT_RESIDUAL_BOUND = 1e-10
CLUSTER_TOL = 1e-7


class ZeroPolynomialError(ValueError):
    pass


class ScalarPolynomial:
    """Univariate polynomial with ascending complex coefficients.

    Trailing exact-zero coefficients are trimmed so the stored leading
    coefficient is nonzero, except for the zero polynomial itself.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128)).ravel()
        last = len(c) - 1
        while last > 0 and c[last] == 0:
            last -= 1
        self.coeffs = np.array(c[: last + 1])

    @staticmethod
    def zero():
        return ScalarPolynomial([0.0])

    @staticmethod
    def monomial(degree, coeff=1.0):
        c = np.zeros(degree + 1, dtype=np.complex128)
        c[degree] = coeff
        return ScalarPolynomial(c)

    @staticmethod
    def from_roots(roots, lead=1.0):
        c = np.array([lead], dtype=np.complex128)
        for r in roots:
            c = np.convolve(c, np.array([-r, 1.0], dtype=np.complex128))
        return ScalarPolynomial(c)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self, tol=0.0):
        return bool(np.all(np.abs(self.coeffs) <= tol))

    def eval(self, z):
        return _kernels.horner(self.coeffs, z)

    def __call__(self, z):
        return self.eval(z)

    def derivative(self):
        if self.degree == 0:
            return ScalarPolynomial.zero()
        return ScalarPolynomial(self.coeffs[1:] * np.arange(1, self.degree + 1))

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        c = a.copy()
        c[: len(b)] += b
        return ScalarPolynomial(c)

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, other):
        if isinstance(other, ScalarPolynomial):
            if self.is_zero() or other.is_zero():
                return ScalarPolynomial.zero()
            return ScalarPolynomial(np.convolve(self.coeffs, other.coeffs))
        return ScalarPolynomial(self.coeffs * complex(other))

    __rmul__ = __mul__

    def compose(self, inner):
        """self(inner(lambda)) by Horner over polynomial coefficients."""
        acc = ScalarPolynomial([self.coeffs[-1]])
        for c in self.coeffs[-2::-1]:
            acc = acc * inner + ScalarPolynomial([c])
        return acc

    def norm(self):
        return float(np.abs(self.coeffs).max())

    def __repr__(self):
        return f"ScalarPolynomial({list(self.coeffs)})"


class RootSet:
    """All roots of a polynomial, with residuals and multiplicity clusters."""

    __slots__ = ("roots", "residuals", "clusters")

    def __init__(self, roots, residuals, clusters):
        self.roots = np.asarray(roots, dtype=np.complex128)
        self.residuals = np.asarray(residuals, dtype=np.float64)
        self.clusters = clusters  # list of (center, multiplicity)

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


def roots(p, max_sweeps=_kernels.MAX_SWEEPS):
    """All complex roots via simultaneous Ehrlich-Aberth iteration."""
    if p.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no root set")
    if p.degree == 0:
        return RootSet([], [], [])
    rts = _kernels.aberth_roots(p.coeffs, max_sweeps=max_sweeps)
    cmax = float(np.abs(p.coeffs).max())
    scales = cmax * np.maximum(1.0, np.abs(rts)) ** p.degree
    residuals = np.abs(p.eval(rts)) / scales
    clusters = _cluster(rts)
    return RootSet(rts, residuals, clusters)


def _cluster(rts):
    order = np.lexsort((rts.imag, rts.real))
    clusters = []
    for idx in order:
        z = rts[idx]
        merged = False
        for i, (c, m) in enumerate(clusters):
            if abs(z - c) <= CLUSTER_TOL * (1.0 + abs(c)):
                clusters[i] = ((c * m + z) / (m + 1), m + 1)
                merged = True
                break
        if not merged:
            clusters.append((z, 1))
    return clusters


def count_roots_in_disc(p, center, radius, base_samples=64, max_depth=24):
    """Winding number of p over a circle, by adaptive contour sampling.

    Independent of the root finder: only polynomial evaluations are used.
    """
    if p.is_zero():
        raise ZeroPolynomialError("zero polynomial")
    if p.degree == 0:
        return 0
    cmax = float(np.abs(p.coeffs).max())
    contour_scale = cmax * max(1.0, abs(center) + radius) ** p.degree
    thetas = np.linspace(0.0, 2 * np.pi, base_samples, endpoint=False)
    pts = center + radius * np.exp(1j * thetas)
    vals = p.eval(pts)
    if np.abs(vals).min() <= 1e-12 * contour_scale:
        raise ValueError("root on or too near the contour")

    def val(theta):
        return p.eval(center + radius * np.exp(1j * theta))

    total = 0.0
    for k in range(base_samples):
        t0 = thetas[k]
        t1 = t0 + 2 * np.pi / base_samples
        total += _arc_winding(val, t0, t1, vals[k],
                              vals[(k + 1) % base_samples], contour_scale, max_depth)
    n = int(round(total / (2 * np.pi)))
    return n


def _arc_winding(val, t0, t1, v0, v1, scale, depth):
    dphi = np.angle(v1 / v0)
    if abs(dphi) <= np.pi / 2 or depth == 0:
        return dphi
    tm = (t0 + t1) / 2
    vm = val(tm)
    if abs(vm) <= 1e-12 * scale:
        raise ValueError("root on or too near the contour")
    return (_arc_winding(val, t0, tm, v0, vm, scale, depth - 1)
            + _arc_winding(val, tm, t1, vm, v1, scale, depth - 1))


def is_stable_scalar(p, region, tol=DEFAULT_BOUNDARY_TOL):
    """Verdict on 'p has no roots in D'.

    Roots within ``tol`` of the boundary resolve by closure: they count as
    members for closed regions and as outsiders for open ones.
    """
    if p.is_zero():
        raise ZeroPolynomialError("stability of the zero polynomial is undefined")
    rs = roots(p)
    boundary_roots = []
    for r in rs:
        m = region.contains(r, tol)
        if m is Membership.INSIDE:
            return StabilityVerdict(Verdict.VIOLATED, witness=complex(r),
                                    evidence={"roots": [complex(x) for x in rs]})
        if m is Membership.BOUNDARY:
            boundary_roots.append(complex(r))
    if boundary_roots and region.closed:
        return StabilityVerdict(Verdict.VIOLATED, witness=boundary_roots[0],
                                evidence={"roots": [complex(x) for x in rs],
                                          "boundary": boundary_roots})
    return StabilityVerdict(Verdict.HOLDS,
                            evidence={"roots": [complex(x) for x in rs],
                                      "boundary": boundary_roots})


class ScalarMultivariatePolynomial:
    """Sparse multivariate polynomial: exponent tuple -> complex coefficient."""

    __slots__ = ("kappa", "terms")

    def __init__(self, kappa, terms):
        if kappa < 1:
            raise ValueError("arity must be >= 1")
        self.kappa = int(kappa)
        self.terms = {}
        for expo, c in dict(terms).items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != self.kappa:
                raise ValueError("exponent arity mismatch")
            c = complex(c)
            if c != 0:
                self.terms[expo] = c

    def eval(self, mu):
        if len(mu) != self.kappa:
            raise ValueError(f"expected {self.kappa} values, got {len(mu)}")
        mu = [complex(m) for m in mu]
        total = 0j
        for expo, c in self.terms.items():
            v = c
            for m, e in zip(mu, expo):
                if e:
                    v *= m**e
            total += v
        return total

    def is_multi_affine(self):
        return all(max(expo, default=0) <= 1 for expo in self.terms)

    def permuted(self, perm):
        return ScalarMultivariatePolynomial(
            self.kappa,
            {tuple(expo[perm[i]] for i in range(self.kappa)): c
             for expo, c in self.terms.items()},
        )

    def is_symmetric(self, tol=1e-12, rng=None):
        """Transpositions generate the symmetric group, so checking them suffices."""
        scale = max((abs(c) for c in self.terms.values()), default=0.0)
        pairs = [(i, j) for i in range(self.kappa) for j in range(i + 1, self.kappa)]
        if self.kappa > 6 and rng is not None:
            extra = [tuple(rng.permutation(self.kappa)) for _ in range(8)]
        else:
            extra = []
        perms = []
        for i, j in pairs:
            perm = list(range(self.kappa))
            perm[i], perm[j] = perm[j], perm[i]
            perms.append(perm)
        perms.extend(extra)
        for perm in perms:
            q = self.permuted(perm)
            keys = set(self.terms) | set(q.terms)
            for k in keys:
                if abs(self.terms.get(k, 0) - q.terms.get(k, 0)) > tol * max(scale, 1.0):
                    return False
        return True

    def diagonal(self):
        """Substitute every variable by one lambda; returns ScalarPolynomial."""
        deg = max((sum(expo) for expo in self.terms), default=0)
        c = np.zeros(deg + 1, dtype=np.complex128)
        for expo, v in self.terms.items():
            c[sum(expo)] += v
        return ScalarPolynomial(c)


def mv_eval(p, mu):
    return p.eval(mu)
