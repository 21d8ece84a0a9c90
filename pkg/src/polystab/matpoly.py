"""Univariate and multivariate matrix polynomials and their spectra."""

from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import linalg
from .regions import Membership, DEFAULT_BOUNDARY_TOL
from .scalarpoly import (RootSet, ScalarPolynomial, ZeroPolynomialError,
                         _cluster as _cluster_roots, roots)
from .verdict import StabilityVerdict, Verdict

DET_COEFF_FLUSH = 1e-10
SINGULAR_SIGMA_TOL = 1e-10


class IrregularPolynomialError(ValueError):
    pass


class MatrixPolynomial:
    """P(lambda) = sum_j lambda^j A_j with square complex coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.asarray(coeffs, dtype=np.complex128)
        if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
            raise ValueError("coefficients must be a list of equal square matrices")
        last = arr.shape[0] - 1
        while last > 0 and not arr[last].any():
            last -= 1
        self.coeffs = np.array(arr[: last + 1])
        if not self.coeffs.any():
            raise ZeroPolynomialError("the zero matrix polynomial is disallowed")

    @property
    def n(self):
        return self.coeffs.shape[1]

    @property
    def degree(self):
        return self.coeffs.shape[0] - 1

    def eval(self, z):
        acc = self.coeffs[-1].copy()
        for a in self.coeffs[-2::-1]:
            acc = acc * z + a
        return acc

    def __call__(self, z):
        return self.eval(z)

    def scalar_compress(self, x, y):
        """The scalar polynomial lambda -> y* P(lambda) x."""
        yc = np.asarray(y, dtype=np.complex128).conj()
        xv = np.asarray(x, dtype=np.complex128)
        return ScalarPolynomial([yc @ a @ xv for a in self.coeffs])

    def derivative(self):
        if self.degree == 0:
            raise ZeroPolynomialError("derivative of a constant matrix polynomial is zero")
        d = np.array([j * self.coeffs[j] for j in range(1, self.degree + 1)])
        return MatrixPolynomial(d)

    def scaled(self, c):
        return MatrixPolynomial(self.coeffs * complex(c))

    def __matmul__(self, other):
        n = self.n
        out = np.zeros((self.degree + other.degree + 1, n, n), dtype=np.complex128)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a @ b
        return MatrixPolynomial(out)

    def coefficient_norm(self):
        return max(linalg.spectral_norm(a) for a in self.coeffs)

    def __repr__(self):
        return f"MatrixPolynomial(n={self.n}, degree={self.degree})"


@dataclass
class EigenReport:
    regular: bool
    det_poly: ScalarPolynomial
    eigenvalues: RootSet
    drop_in_degree: int
    raw_det_coeffs: np.ndarray = None


def determinant_polynomial(p, flush=DET_COEFF_FLUSH, return_raw=False):
    """Coefficients of det P(lambda) by evaluation at scaled roots of unity.

    Sampling nodes sit on a circle of radius rho = max(1, sum||A_j||/||A_d||)
    so the inverse DFT stays a unitary-scaled solve.
    """
    n, d = p.n, p.degree
    m = n * d + 1
    norms = [linalg.spectral_norm(a) for a in p.coeffs]
    lead = norms[-1] if norms[-1] > 0 else 1.0
    rho = max(1.0, sum(norms) / lead)
    nodes = rho * np.exp(2j * np.pi * np.arange(m) / m)
    dets = np.array([np.linalg.det(p.eval(z)) for z in nodes])
    # values at rho*omega^{+j} invert through the forward transform
    raw = np.fft.fft(dets) / m / rho ** np.arange(m)
    cutoff = flush * max(np.abs(dets).max(), 1e-300)
    cleaned = np.where(np.abs(raw) * rho ** np.arange(m) < cutoff, 0.0, raw)
    poly = ScalarPolynomial(cleaned)
    if return_raw:
        return poly, raw
    return poly


def _linearized_eigenvalues(p, n_finite):
    """The n_finite finite eigenvalues of P via its block companion pencil.

    The generalized problem C0 v = lambda C1 v is solved with a QZ-based
    dense routine; infinite eigenvalues (beta near zero) are discarded by
    keeping the n_finite pairs with the largest |beta| share.
    """
    from scipy import linalg as sla

    n, d = p.n, p.degree
    m = n * d
    c0 = np.zeros((m, m), dtype=np.complex128)
    c1 = np.eye(m, dtype=np.complex128)
    for k in range(d - 1):
        c0[k * n:(k + 1) * n, (k + 1) * n:(k + 2) * n] = np.eye(n)
    for j in range(d):
        c0[(d - 1) * n:, j * n:(j + 1) * n] = -p.coeffs[j]
    c1[(d - 1) * n:, (d - 1) * n:] = p.coeffs[d]
    alpha, beta = sla.eig(c0, c1, right=False, homogeneous_eigvals=True)
    share = np.abs(beta) / (np.abs(alpha) + np.abs(beta) + 1e-300)
    order = np.argsort(-share)[:n_finite]
    return alpha[order] / beta[order]


def eigenvalues(p):
    det_poly, raw = determinant_polynomial(p, return_raw=True)
    if det_poly.is_zero():
        return EigenReport(False, ScalarPolynomial.zero(), RootSet([], [], []),
                           p.n * p.degree, raw_det_coeffs=raw)
    drop = p.n * p.degree - det_poly.degree
    if det_poly.degree == 0:
        return EigenReport(True, det_poly, RootSet([], [], []), drop,
                           raw_det_coeffs=raw)
    rts = _linearized_eigenvalues(p, det_poly.degree)
    scale = max(p.coefficient_norm(), 1.0)
    residuals = np.array([
        linalg.sigma_min(p.eval(z)) /
        (scale * max(1.0, abs(z)) ** p.degree) for z in rts])
    ev = RootSet(rts, residuals, _cluster_roots(rts))
    return EigenReport(True, det_poly, ev, drop, raw_det_coeffs=raw)


def is_stable(p, region, tol=DEFAULT_BOUNDARY_TOL):
    """Verdict on 'P has no eigenvalues in D'."""
    report = eigenvalues(p)
    if not report.regular:
        raise IrregularPolynomialError("stability is undefined for irregular polynomials")
    evs = [complex(z) for z in report.eigenvalues]
    boundary = []
    for z in evs:
        m = region.contains(z, tol)
        if m is Membership.INSIDE:
            return StabilityVerdict(Verdict.VIOLATED, witness=z,
                                    evidence={"eigenvalues": evs})
        if m is Membership.BOUNDARY:
            boundary.append(z)
    if boundary and region.closed:
        return StabilityVerdict(Verdict.VIOLATED, witness=boundary[0],
                                evidence={"eigenvalues": evs,
                                          "boundary": boundary})
    return StabilityVerdict(Verdict.HOLDS,
                            evidence={"eigenvalues": evs,
                                      "boundary": boundary})


def entries_linearly_independent(p, tol=1e-9):
    """True iff the n^2 entry polynomials of P are linearly independent."""
    n, d = p.n, p.degree
    rows = p.coeffs.reshape(d + 1, n * n).T  # one row per entry, length d+1
    sv = np.linalg.svd(rows, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return False
    rank = int(np.sum(sv >= tol * sv[0]))
    return rank == n * n


@dataclass
class NumericalRangeSample:
    points: np.ndarray
    generators: list


def numerical_range_sample(p, count, seed):
    """Roots of x* P(lambda) x for random unit vectors x."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    pts = []
    gens = []
    scale = p.coefficient_norm()
    for _ in range(count):
        x = linalg.gen_unit_vector(p.n, rng)
        q = p.scalar_compress(x, x)
        if q.norm() <= 1e-14 * max(scale, 1.0):
            continue
        if q.degree == 0:
            continue
        for r in roots(q):
            pts.append(complex(r))
            gens.append(x)
    return NumericalRangeSample(np.array(pts, dtype=np.complex128), gens)


def szasz_bound(p, z):
    """Norm bound 2*exp(lambda_H[z A_1 - |z|^2 A_2] + |z|^2 ||A_1||^2 / 2).

    Requires the constant coefficient to be the identity.
    """
    n = p.n
    if linalg.spectral_norm(p.coeffs[0] - np.eye(n)) > 1e-12:
        raise ValueError("constant coefficient must be the identity")
    if p.degree < 1:
        raise ValueError("degree must be at least 1")
    a1 = p.coeffs[1]
    a2 = p.coeffs[2] if p.degree >= 2 else np.zeros((n, n), dtype=np.complex128)
    z = complex(z)
    lam = linalg.lambda_H(z * a1 - abs(z) ** 2 * a2)
    arg = lam + 0.5 * abs(z) ** 2 * linalg.spectral_norm(a1) ** 2
    if arg > 700.0:  # exp would overflow double precision
        return float("inf")
    return 2.0 * float(np.exp(arg))


class MultivariateMatrixPolynomial:
    """Sparse exponent-tuple -> coefficient-matrix map in kappa variables."""

    __slots__ = ("n", "kappa", "terms")

    def __init__(self, n, kappa, terms):
        self.n = int(n)
        self.kappa = int(kappa)
        self.terms = {}
        for expo, mat in dict(terms).items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != self.kappa:
                raise ValueError("exponent arity mismatch")
            mat = np.asarray(mat, dtype=np.complex128)
            if mat.shape != (self.n, self.n):
                raise ValueError("coefficient matrix shape mismatch")
            if mat.any():
                self.terms[expo] = mat

    def eval(self, mu):
        if len(mu) != self.kappa:
            raise ValueError(f"expected {self.kappa} values, got {len(mu)}")
        mu = [complex(m) for m in mu]
        out = np.zeros((self.n, self.n), dtype=np.complex128)
        for expo, mat in self.terms.items():
            c = 1.0 + 0j
            for m, e in zip(mu, expo):
                if e:
                    c *= m**e
            out += c * mat
        return out

    def scalar_compress(self, x, y):
        from .scalarpoly import ScalarMultivariatePolynomial

        yc = np.asarray(y, dtype=np.complex128).conj()
        xv = np.asarray(x, dtype=np.complex128)
        return ScalarMultivariatePolynomial(
            self.kappa, {expo: yc @ mat @ xv for expo, mat in self.terms.items()}
        )

    def coefficient_norm(self):
        return max((linalg.spectral_norm(m) for m in self.terms.values()), default=0.0)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def __repr__(self):
        return f"MultivariateMatrixPolynomial(n={self.n}, kappa={self.kappa}, terms={len(self.terms)})"


def mv_eval_matrix(p, mu):
    return p.eval(mu)


def _relative_sigma(p, mu):
    """sigma_min(P(mu)) / ||P(mu)||: scale-invariant singularity measure."""
    mat = p.eval(mu)
    norm = linalg.spectral_norm(mat)
    if norm == 0.0:
        return 0.0
    return linalg.sigma_min(mat) / norm


def mv_stability_sample(p, region, count, seed, refine=True):
    """Evidence sampling of relative sigma_min of P(mu) over mu in D^kappa.

    Uniform seeded samples plus local minimization from the best point
    (full-space Nelder-Mead, then coordinate-aligned passes).  The measure
    sigma_min / ||P(mu)|| is scale-invariant, so tiny-norm evaluations near
    a root of the whole matrix do not masquerade as singularities.  When the
    region is open, a near-singular minimum hugging the boundary resolves as
    'holds' (the same closure rule applied to scalar roots).  A verdict of
    'holds' is evidence only, never a proof.
    """
    kappa = p.kappa
    pts = region.sample(count * kappa, seed)
    threshold = SINGULAR_SIGMA_TOL

    best_sigma = np.inf
    best_mu = None
    for i in range(count):
        mu = tuple(pts[i * kappa: (i + 1) * kappa])
        s = _relative_sigma(p, mu)
        if s < best_sigma:
            best_sigma, best_mu = s, mu

    if refine and best_mu is not None:
        best_mu, best_sigma = _mv_refine(p, region, best_mu, best_sigma)

    boundary_graze = False
    if best_mu is not None and not region.closed:
        boundary_graze = any(
            region.boundary_distance(m) <= 1e-7 * (1.0 + abs(m))
            for m in best_mu)
    evidence = {"min_sigma": float(best_sigma),
                "argmin": [complex(m) for m in best_mu] if best_mu else None,
                "samples": count, "threshold": float(threshold),
                "boundary_graze": boundary_graze}
    if best_sigma <= threshold and not boundary_graze:
        return StabilityVerdict(Verdict.VIOLATED, witness=tuple(best_mu), evidence=evidence)
    return StabilityVerdict(Verdict.HOLDS, evidence=evidence)


def _mv_refine(p, region, mu0, sigma0):
    kappa = p.kappa
    penalty = 1e6

    def pack(mu):
        return np.array([c for m in mu for c in (m.real, m.imag)])

    def unpack(v):
        return tuple(complex(v[2 * i], v[2 * i + 1]) for i in range(kappa))

    def objective(v):
        mu = unpack(v)
        for m in mu:
            if not region.includes(m, tol=0.0):
                return penalty + sum(region.boundary_distance(m) for m in mu)
        return _relative_sigma(p, mu)

    best_v = pack(mu0)
    best_s = sigma0
    # full-space pass, then one coordinate-aligned pass per variable
    subsets = [None] + [i for i in range(kappa)]
    for subset in subsets:
        if subset is None:
            res = optimize.minimize(objective, best_v, method="Nelder-Mead",
                                    options={"xatol": 1e-13, "fatol": 1e-15,
                                             "maxiter": 4000, "maxfev": 4000})
            cand_v, cand_s = res.x, res.fun
        else:
            fixed = best_v.copy()

            def coord_obj(w, idx=subset, base=fixed):
                v = base.copy()
                v[2 * idx] = w[0]
                v[2 * idx + 1] = w[1]
                return objective(v)

            res = optimize.minimize(coord_obj, best_v[2 * subset: 2 * subset + 2],
                                    method="Nelder-Mead",
                                    options={"xatol": 1e-13, "fatol": 1e-15,
                                             "maxiter": 2000, "maxfev": 2000})
            cand_v = best_v.copy()
            cand_v[2 * subset] = res.x[0]
            cand_v[2 * subset + 1] = res.x[1]
            cand_s = res.fun
        if cand_s < best_s and cand_s < 1e5:
            best_v, best_s = cand_v, cand_s
    return unpack(best_v), float(best_s)


# -- JSON instance format ----------------------------------------------------

def _matrix_to_json(mat):
    return [[[z.real, z.imag] for z in row] for row in np.asarray(mat)]


def _matrix_from_json(rows):
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def instance_to_dict(p):
    if isinstance(p, MatrixPolynomial):
        return {"n": p.n, "degree": p.degree,
                "coefficients": [_matrix_to_json(a) for a in p.coeffs]}
    if isinstance(p, MultivariateMatrixPolynomial):
        return {"n": p.n, "variables": p.kappa,
                "terms": [{"exponent": list(expo), "matrix": _matrix_to_json(mat)}
                          for expo, mat in sorted(p.terms.items())]}
    raise TypeError(f"cannot serialize {type(p)!r}")


def instance_from_dict(d):
    if "coefficients" in d:
        coeffs = [_matrix_from_json(m) for m in d["coefficients"]]
        return MatrixPolynomial(np.array(coeffs))
    kappa = int(d.get("variables", 1))
    terms = {tuple(t["exponent"]): _matrix_from_json(t["matrix"]) for t in d["terms"]}
    if kappa == 1:
        deg = max(e[0] for e in terms)
        n = int(d["n"])
        coeffs = np.zeros((deg + 1, n, n), dtype=np.complex128)
        for (e,), mat in terms.items():
            coeffs[e] = mat
        return MatrixPolynomial(coeffs)
    return MultivariateMatrixPolynomial(int(d["n"]), kappa, terms)
