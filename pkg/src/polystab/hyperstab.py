"""Certificate machinery for the strengthened eigenvalue-exclusion condition.

A certificate for (P, x, D) is a vector y whose compression y* P(lambda) x
has no roots in D.  The constructive searches below follow the branch
structure of the quadratic/cubic criteria: orthogonal-complement trials
first, then a span decomposition of the designated coefficient vector and
the factor-stability dichotomy, with collinear fallbacks y = A_j x.  Every
candidate is re-verified by root finding before it is returned, so the
searches can be applied opportunistically; a failure is a diagnostic, never
a disproof.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg as sla

from . import linalg
from .matpoly import MatrixPolynomial, entries_linearly_independent, eigenvalues, is_stable
from .regions import DEFAULT_BOUNDARY_TOL
from .scalarpoly import ScalarPolynomial, is_stable_scalar, roots
from .verdict import Verdict

SPAN_TOL = 1e-8
COEFF_MATCH_TOL = 1e-12


class CertificateError(ValueError):
    pass


@dataclass
class Certificate:
    x: np.ndarray
    y: np.ndarray
    scalar: ScalarPolynomial
    roots: object
    region: object
    strategy: str = ""


@dataclass
class CertificateFailure:
    x: np.ndarray
    diagnostics: list = field(default_factory=list)

    def __bool__(self):
        return False


@dataclass
class SpanDecomposition:
    dependent: bool
    alpha: complex
    beta: complex
    residual: float


@dataclass
class HyperSurveyReport:
    verdict: str  # all-certified | counterexample-candidate | inconclusive
    certificates: list
    failures: list
    sampled: int
    witness_x: np.ndarray = None


def span_decompose(w, u, v, tol=SPAN_TOL):
    """Least-squares coefficients of w against span{u, v}."""
    w = np.asarray(w, dtype=np.complex128)
    u = np.asarray(u, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    if not (w.any() or u.any() or v.any()):
        raise ValueError("all three vectors are zero")
    m = np.stack([u, v], axis=1)
    coeffs, *_ = np.linalg.lstsq(m, w, rcond=None)
    resid = np.linalg.norm(w - m @ coeffs)
    nw = np.linalg.norm(w)
    rel = 0.0 if nw == 0 else resid / nw
    return SpanDecomposition(rel <= tol, complex(coeffs[0]), complex(coeffs[1]), float(rel))


def _orth_candidate(perps, target, tol=1e-10):
    """Component of target orthogonal to span(perps); None if negligible."""
    t = np.asarray(target, dtype=np.complex128)
    nt = np.linalg.norm(t)
    if nt == 0:
        return None
    cols = [np.asarray(p, dtype=np.complex128) for p in perps
            if np.linalg.norm(p) > 0]
    if cols:
        q, _ = np.linalg.qr(np.stack(cols, axis=1))
        y = t - q @ (q.conj().T @ t)
    else:
        y = t.copy()
    ny = np.linalg.norm(y)
    if ny <= tol * nt:
        return None
    return y / ny


def build_certificate(p, x, y, region, tol=DEFAULT_BOUNDARY_TOL, strategy=""):
    """Verify y as a certificate for (P, x, D); None when it is not one."""
    y = np.asarray(y, dtype=np.complex128)
    ny = np.linalg.norm(y)
    if ny == 0:
        return None
    y = y / ny
    scalar = p.scalar_compress(x, y)
    scale = p.coefficient_norm() * np.linalg.norm(x)
    if scalar.norm() <= 1e-14 * max(scale, 1e-300):
        return None
    if scalar.degree == 0:
        return Certificate(np.asarray(x), y, scalar, None, region, strategy)
    verdict = is_stable_scalar(scalar, region, tol)
    if verdict.status is Verdict.HOLDS:
        return Certificate(np.asarray(x), y, scalar, roots(scalar), region, strategy)
    return None


def _factor_stable(coeffs, region, tol):
    q = ScalarPolynomial(coeffs)
    if q.is_zero() or q.degree == 0:
        return q.norm() > 0
    return is_stable_scalar(q, region, tol).status is Verdict.HOLDS


def _run_branches(p, x, region, tol, head, span_args, factors, subbranches, diagnostics):
    """Shared driver for the structural quadratic/cubic searches.

    head: (perps, target, label) orthogonal-complement trial.
    span_args: (w, u, v) for the span decomposition.
    factors: two functions (alpha, beta) -> ascending coeff list.
    subbranches: per factor, ((perps, target), fallback_vector_fn).
    """
    perps, target, label = head
    y = _orth_candidate(perps, target)
    if y is not None:
        cert = build_certificate(p, x, y, region, tol, strategy=label)
        if cert:
            return cert
        diagnostics.append(f"{label}: candidate found but compression not region-free")
    else:
        diagnostics.append(f"{label}: orthogonal complement trial unavailable")

    dec = span_decompose(*span_args)
    diagnostics.append(
        f"span residual {dec.residual:.2e} alpha={dec.alpha:.4g} beta={dec.beta:.4g}")
    for idx, make_factor in enumerate(factors):
        coeffs = make_factor(dec.alpha, dec.beta)
        if not _factor_stable(coeffs, region, tol):
            diagnostics.append(f"factor {idx}: has a root in the region")
            continue
        (sub_perps, sub_target), fallback = subbranches[idx]
        y = _orth_candidate(sub_perps, sub_target)
        if y is not None:
            cert = build_certificate(p, x, y, region, tol,
                                     strategy=f"factor-{idx}-orthocomplement")
            if cert:
                return cert
            diagnostics.append(f"factor {idx}: orthocomplement candidate failed re-verification")
        y = fallback()
        if y is not None and np.linalg.norm(y) > 0:
            cert = build_certificate(p, x, y, region, tol,
                                     strategy=f"factor-{idx}-collinear")
            if cert:
                return cert
            diagnostics.append(f"factor {idx}: collinear fallback failed re-verification")
    return CertificateFailure(np.asarray(x), diagnostics)


def structural_certificate_quadratic(p, x, region, variant, tol=DEFAULT_BOUNDARY_TOL):
    """Constructive certificate search for quadratic P, variants a/b/c."""
    if p.degree != 2:
        raise CertificateError("quadratic search needs degree 2")
    x = np.asarray(x, dtype=np.complex128)
    if not x.any():
        raise CertificateError("x must be nonzero")
    if variant in ("b", "c") and not region.excludes_origin(tol):
        raise CertificateError(f"variant ({variant}) requires 0 outside the region")
    a2, a1, a0 = p.coeffs[2] @ x, p.coeffs[1] @ x, p.coeffs[0] @ x
    diagnostics = [f"quadratic variant ({variant})"]
    if variant == "a":
        return _run_branches(
            p, x, region, tol,
            head=([a2, a1], a0, "monomial-free head (constant compression)"),
            span_args=(a0, a2, a1),
            factors=[lambda al, be: [al, 0, 1],      # lambda^2 + alpha
                     lambda al, be: [be, 1]],        # lambda + beta
            subbranches=[(([a1], a2), lambda: a1),
                         (([a2], a1), lambda: a2)],
            diagnostics=diagnostics)
    if variant == "b":
        return _run_branches(
            p, x, region, tol,
            head=([a2, a0], a1, "monomial head (compression ~ lambda)"),
            span_args=(a1, a2, a0),
            factors=[lambda al, be: [0, al, 1],      # lambda(lambda + alpha)
                     lambda al, be: [1, be]],        # beta*lambda + 1
            subbranches=[(([a0], a2), lambda: a0),
                         (([a2], a0), lambda: a2)],
            diagnostics=diagnostics)
    if variant == "c":
        return _run_branches(
            p, x, region, tol,
            head=([a1, a0], a2, "monomial head (compression ~ lambda^2)"),
            span_args=(a2, a1, a0),
            factors=[lambda al, be: [0, 1, al],      # lambda(alpha*lambda + 1)
                     lambda al, be: [1, 0, be]],     # beta*lambda^2 + 1
            subbranches=[(([a0], a1), lambda: a0),
                         (([a1], a0), lambda: a1)],
            diagnostics=diagnostics)
    raise CertificateError(f"unknown variant {variant!r}")


_CUBE_ROOTS_OF_MINUS_ONE = (-1 + 0j,
                            0.5 - 0.8660254037844386j,
                            0.5 + 0.8660254037844386j)


def structural_certificate_cubic(p, x, region, variant, tol=DEFAULT_BOUNDARY_TOL):
    """Constructive certificate search for cubic P, variants a/b/c.

    Variant (a) requires the leading coefficient to equal the constant one
    and the cube roots of -1 to be outside the region; (b)/(c) require the
    origin outside the region.
    """
    if p.degree != 3:
        raise CertificateError("cubic search needs degree 3")
    x = np.asarray(x, dtype=np.complex128)
    if not x.any():
        raise CertificateError("x must be nonzero")
    a3, a2, a1, a0 = (p.coeffs[3] @ x, p.coeffs[2] @ x,
                      p.coeffs[1] @ x, p.coeffs[0] @ x)
    diagnostics = [f"cubic variant ({variant})"]
    if variant == "a":
        scale = p.coefficient_norm()
        if linalg.spectral_norm(p.coeffs[3] - p.coeffs[0]) > 1e-12 * max(scale, 1.0):
            raise CertificateError(
                "variant (a) needs leading coefficient equal to the constant one")
        for pt in _CUBE_ROOTS_OF_MINUS_ONE:
            if region.includes(pt, tol):
                raise CertificateError(
                    "variant (a) requires the cube roots of -1 outside the region")
        return _run_branches(
            p, x, region, tol,
            head=([a2, a1], a0, "palindromic head (compression ~ lambda^3 + 1)"),
            span_args=(a0, a2, a1),
            factors=[lambda al, be: [al, 0, 1, al],   # alpha l^3 + l^2 + alpha
                     lambda al, be: [be, 1, 0, be]],  # beta l^3 + l + beta
            subbranches=[(([a1], a2), lambda: a1),
                         (([a2], a1), lambda: a2)],
            diagnostics=diagnostics)
    if variant in ("b", "c") and not region.excludes_origin(tol):
        raise CertificateError(f"variant ({variant}) requires 0 outside the region")
    if variant == "b":
        return _run_branches(
            p, x, region, tol,
            head=([a0, a2], a1, "monomial head (compression ~ lambda)"),
            span_args=(a1, a2, a0),
            factors=[lambda al, be: [0, al, 1],        # lambda^2 + alpha lambda
                     lambda al, be: [1, be, 0, 1]],    # lambda^3 + beta lambda + 1
            subbranches=[(([a0], a2), lambda: a0),
                         (([a2], a0), lambda: a2)],
            diagnostics=diagnostics)
    if variant == "c":
        return _run_branches(
            p, x, region, tol,
            head=([a0, a1], a2, "monomial head (compression ~ lambda^2)"),
            span_args=(a2, a1, a0),
            factors=[lambda al, be: [0, 1, al],        # alpha lambda^2 + lambda
                     lambda al, be: [1, 0, be, 1]],    # lambda^3 + beta lambda^2 + 1
            subbranches=[(([a0], a1), lambda: a0),
                         (([a1], a0), lambda: a1)],
            diagnostics=diagnostics)
    raise CertificateError(f"unknown variant {variant!r}")


def pencil_form_detect(p, tol=1e-9):
    """Try to factor P(lambda) = p(lambda)A + q(lambda)B.

    Returns None when the stacked coefficient matrices have numerical rank
    above two.  The recovered scalar polynomials are normalized monic (the
    scale sits in the matrices), the higher-degree pair comes first.
    """
    d, n = p.degree, p.n
    rows = p.coeffs.reshape(d + 1, n * n)
    sv = np.linalg.svd(rows, compute_uv=False)
    rank = int(np.sum(sv >= tol * sv[0]))
    if rank > 2:
        return None
    scale = np.linalg.norm(rows, axis=1).max()
    pivots = []
    for j in range(d + 1):
        r = rows[j]
        if np.linalg.norm(r) <= tol * scale:
            continue
        if pivots:
            basis = np.stack([rows[i] for i in pivots], axis=1)
            coeffs, *_ = np.linalg.lstsq(basis, r, rcond=None)
            if np.linalg.norm(r - basis @ coeffs) <= tol * np.linalg.norm(r):
                continue
        pivots.append(j)
        if len(pivots) == 2:
            break
    basis = np.stack([rows[i] for i in pivots], axis=1)
    sols = np.linalg.lstsq(basis, rows.T, rcond=None)[0]  # (len(pivots), d+1)
    pairs = []
    for i, piv in enumerate(pivots):
        coords = sols[i].copy()
        coords[np.abs(coords) <= tol * np.abs(coords).max()] = 0.0
        poly = ScalarPolynomial(coords)
        lead = poly.coeffs[-1]
        pairs.append((poly * (1.0 / lead), p.coeffs[piv].reshape(n, n) * lead))
    if len(pairs) == 1:
        pairs.append((ScalarPolynomial.zero(), np.zeros((n, n), dtype=np.complex128)))
    pairs.sort(key=lambda pair: -pair[0].degree)
    (pp, aa), (qq, bb) = pairs
    return pp, qq, aa, bb


def _pencil_certificate(p, x, region, tol):
    """Certificate for P = p*A + q*B via simultaneous triangularization."""
    detected = pencil_form_detect(p)
    if detected is None:
        return None
    pp, qq, a, b = detected
    if not is_stable(p, region, tol).holds:
        return None
    x = np.asarray(x, dtype=np.complex128)
    if qq.is_zero():
        # P = p(lambda) A; y = Ax compresses to p * ||Ax||^2-weighted scalar
        cert = build_certificate(p, x, a @ x, region, tol, strategy="rank-one")
        return cert
    aa, bb, q, z = sla.qz(a, b, output="complex")
    xt = z.conj().T @ x
    idx = np.nonzero(np.abs(xt) > 1e-12 * np.linalg.norm(xt))[0]
    if idx.size == 0:
        return None
    r = idx[-1]
    return build_certificate(p, x, q[:, r], region, tol, strategy="triangularization")


def hyper_check(p, x, region, budget=64, seed=0, tol=DEFAULT_BOUNDARY_TOL,
                candidate_map=None):
    """Certificate search cascade for a single x.

    Order: caller-provided candidates (``candidate_map(x)`` when given),
    two-matrix-family triangularization, structural quadratic/cubic
    branches, distinguished candidates {x, A_j x}, then seeded random draws.
    Exhaustion is reported as a failure diagnostic, never as a disproof.
    """
    x = np.asarray(x, dtype=np.complex128)
    if not x.any():
        raise CertificateError("x must be nonzero")
    if budget < 1:
        # a zero budget disables the search entirely: the caller asked for
        # no work, so the only honest answer is inconclusive
        return CertificateFailure(x, ["budget exhausted (0 allowed)"])
    diagnostics = []

    if candidate_map is not None:
        for cand in candidate_map(x):
            cert = build_certificate(p, x, cand, region, tol, strategy="supplied")
            if cert:
                return cert
        diagnostics.append("supplied candidates exhausted")

    cert = _pencil_certificate(p, x, region, tol)
    if cert:
        return cert
    diagnostics.append("two-matrix-family route unavailable or unstable")

    if p.degree == 2:
        variants = ["a"]
        if region.excludes_origin(tol):
            variants += ["b", "c"]
        for variant in variants:
            res = structural_certificate_quadratic(p, x, region, variant, tol)
            if isinstance(res, Certificate):
                return res
            diagnostics.extend(res.diagnostics)
    elif p.degree == 3:
        scale = p.coefficient_norm()
        if (linalg.spectral_norm(p.coeffs[3] - p.coeffs[0]) <= 1e-12 * max(scale, 1.0)
                and not any(region.includes(pt, tol) for pt in _CUBE_ROOTS_OF_MINUS_ONE)):
            res = structural_certificate_cubic(p, x, region, "a", tol)
            if isinstance(res, Certificate):
                return res
            diagnostics.extend(res.diagnostics)
        if region.excludes_origin(tol):
            for variant in ("b", "c"):
                res = structural_certificate_cubic(p, x, region, variant, tol)
                if isinstance(res, Certificate):
                    return res
                diagnostics.extend(res.diagnostics)

    for label, cand in [("y=x", x)] + [(f"y=A{j}x", p.coeffs[j] @ x)
                                       for j in range(p.degree + 1)]:
        cert = build_certificate(p, x, cand, region, tol, strategy=label)
        if cert:
            return cert
    diagnostics.append("distinguished candidates exhausted")

    rng = np.random.default_rng(seed)
    for _ in range(budget):
        y = linalg.gen_unit_vector(p.n, rng)
        cert = build_certificate(p, x, y, region, tol, strategy="random")
        if cert:
            return cert
    diagnostics.append(f"budget exhausted ({budget} random draws)")
    return CertificateFailure(x, diagnostics)


def hyper_survey(p, region, nx, budget=64, seed=0, tol=DEFAULT_BOUNDARY_TOL,
                 candidate_map=None):
    """Run hyper_check over the standard basis plus nx sampled unit vectors."""
    if nx < 1:
        raise ValueError("nx must be >= 1")
    seq = np.random.SeedSequence(seed)
    subseeds = seq.spawn(nx + 1)
    rng = np.random.default_rng(subseeds[0])
    xs = [np.eye(p.n, dtype=np.complex128)[:, j] for j in range(p.n)]
    xs += [linalg.gen_unit_vector(p.n, rng) for _ in range(nx)]
    certificates, failures = [], []
    for i, x in enumerate(xs):
        sub = int(subseeds[min(i, nx)].generate_state(1)[0])
        res = hyper_check(p, x, region, budget=budget, seed=sub, tol=tol,
                          candidate_map=candidate_map)
        if isinstance(res, Certificate):
            certificates.append(res)
        else:
            failures.append(res)
    if not failures:
        verdict = "all-certified"
    elif budget == 0:
        verdict = "inconclusive"
    else:
        verdict = "counterexample-candidate"
    witness = failures[0].x if failures else None
    return HyperSurveyReport(verdict, certificates, failures, len(xs), witness)


def gauss_lucas_transfer(p, region, survey, tol=DEFAULT_BOUNDARY_TOL):
    """Transfer certificates of P to its derivative.

    Requires a region whose complement is convex (cataloged shapes only)
    and an all-certified survey.  A derivative with dependent entries is
    allowed when it is still regular; each transferred pair is re-verified,
    which catches the vanishing compressions independence would rule out.
    """
    if not _complement_convex(region):
        raise ValueError("region complement is not convex (or shape not cataloged)")
    if survey.verdict != "all-certified":
        raise ValueError("transfer needs an all-certified survey")
    dp = p.derivative()
    report = eigenvalues(dp)
    if not report.regular:
        raise ValueError("derivative is irregular; not certifiable for any nonempty region")
    if not entries_linearly_independent(dp):
        note = "derivative entries are linearly dependent; relying on per-pair re-verification"
    else:
        note = None
    certificates, failures = [], []
    for cert in survey.certificates:
        new = build_certificate(dp, cert.x, cert.y, region, tol, strategy="transfer")
        if new:
            certificates.append(new)
        else:
            failures.append(CertificateFailure(
                cert.x, ["transferred compression fails region-freeness"]))
    verdict = "all-certified" if not failures else "counterexample-candidate"
    rep = HyperSurveyReport(verdict, certificates, failures, survey.sampled,
                            failures[0].x if failures else None)
    if note:
        for f in rep.failures:
            f.diagnostics.append(note)
    return rep


def _complement_convex(region):
    k = region.kind
    if k == "halfplane":
        return True
    if k == "ext-disc":
        return True
    if k == "complement":
        return region.inner.kind in ("disc", "halfplane")
    return False
