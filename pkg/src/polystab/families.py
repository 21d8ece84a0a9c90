"""Structured matrix-polynomial families with known exclusion regions.

Each family couples a seeded generator with the hypotheses it is supposed
to satisfy and the region claim that follows.  ``make_family`` builds an
instance, ``check_family_hypotheses`` re-checks the assumptions
numerically, and ``verify_family_claim`` gathers eigenvalue evidence plus
certificate surveys (and product-region sampling for the multivariate
companions).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .hyperstab import hyper_survey
from .matpoly import (MatrixPolynomial, MultivariateMatrixPolynomial,
                      eigenvalues, is_stable, mv_stability_sample)
from .regions import Region, DEFAULT_BOUNDARY_TOL, open_right_half_plane
from .verdict import StabilityVerdict, Verdict

FAMILY_TAGS = (
    "mgt",
    "subadd",
    "ph-quadratic",
    "ph-corollary-Q",
    "psd-cubic-sector",
    "palindromic-psd-cubic",
    "angle-cubic",
    "pencil-aJ",
)

_PD_SHIFT = 1e-3
_KERNEL_TOL = 1e-10
_PSD_TOL = 1e-10


@dataclass
class FamilyInstance:
    tag: str
    poly: MatrixPolynomial
    region: Region
    claim: str  # hyperstable | stable
    matrices: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    companions: list = field(default_factory=list)  # (label, mv poly, product region)
    candidate_map: object = None


@dataclass
class FamilyReport:
    tag: str
    hypotheses_ok: bool
    hypothesis_notes: list
    stability: object
    survey: object
    companions: list
    ok: bool


def _pd(n, seed):
    return linalg.gen_psd(n, seed) + _PD_SHIFT * np.eye(n)


def _hermitian(n, seed):
    c = linalg.gen_complex(n, seed)
    return (c + c.conj().T) / 2


def make_family(tag, n=3, seed=0, **params):
    """Build one seeded instance of a cataloged family."""
    if tag not in FAMILY_TAGS:
        raise ValueError(f"unknown family tag {tag!r}; known: {', '.join(FAMILY_TAGS)}")
    ss = np.random.SeedSequence([seed, FAMILY_TAGS.index(tag)]).spawn(8)
    rng = np.random.default_rng(ss[0])
    rhp = open_right_half_plane()

    if tag == "mgt":
        r = np.asarray(params["R"], dtype=np.complex128) if "R" in params \
            else _pd(n, ss[1])
        a = float(params.get("a", 2.0))
        b = float(params.get("b", 2.0))
        c = float(params.get("c", 1.0))
        if not (a > 1 and b > c > 0):
            raise ValueError(f"need a > 1 and b > c > 0, got a={a}, b={b}, c={c}")
        eye = np.eye(r.shape[0])
        poly = MatrixPolynomial([c * r, b * r, a * eye, eye])
        return FamilyInstance(tag, poly, rhp, "hyperstable",
                              matrices={"R": r}, params={"a": a, "b": b, "c": c})

    if tag == "subadd":
        radius = float(params.get("r", 0.5))
        if radius <= 0:
            raise ValueError("need r > 0")
        a1 = linalg.gen_complex(n, ss[1])
        a2 = linalg.gen_complex(n, ss[2])
        bound = radius * linalg.spectral_norm(a1) + radius**2 * linalg.spectral_norm(a2)
        u, _ = np.linalg.qr(linalg.gen_complex(n, ss[3]))
        a0 = 2.0 * bound * u
        poly = MatrixPolynomial([a0, a1, a2])
        disc = Region.disc(0j, radius, closed=False)
        comp = MultivariateMatrixPolynomial(
            n, 2, {(2, 0): a2, (0, 1): a1, (0, 0): a0})
        return FamilyInstance(tag, poly, disc, "hyperstable",
                              matrices={"A0": a0, "A1": a1, "A2": a2},
                              params={"r": radius},
                              companions=[("two-variable split", comp,
                                           Region.power(disc, 2))])

    if tag == "ph-quadratic":
        r0, r1, r2 = _pd(n, ss[1]), _pd(n, ss[2]), _pd(n, ss[3])
        j = linalg.gen_skew(n, ss[4])
        poly = MatrixPolynomial([r0, j + r1, r2])
        comp = MultivariateMatrixPolynomial(
            n, 2, {(1, 1): r2, (0, 1): j + r1, (0, 0): r0})
        return FamilyInstance(tag, poly, rhp, "hyperstable",
                              matrices={"R0": r0, "R1": r1, "R2": r2, "J": j},
                              companions=[("dissipative split", comp,
                                           Region.power(rhp, 2))])

    if tag == "ph-corollary-Q":
        j = linalg.gen_skew(n, ss[1])
        r = linalg.gen_psd(n, ss[2])
        q = np.eye(n, dtype=np.complex128)
        q += 0.5 * np.triu(linalg.gen_complex(n, ss[3]), k=1)
        a2 = np.linalg.solve(q.conj().T, _pd(n, ss[4]))
        a0 = np.linalg.solve(q.conj().T, _pd(n, ss[5]))
        poly = MatrixPolynomial([a0, (j + r) @ q, a2])
        return FamilyInstance(tag, poly, rhp, "hyperstable",
                              matrices={"Q": q, "R": r, "J": j, "A0": a0, "A2": a2},
                              candidate_map=lambda x: [q @ x])

    if tag == "psd-cubic-sector":
        r1 = linalg.gen_psd(n, ss[1])
        r2 = linalg.gen_psd(n, ss[2])
        r3 = _pd(n, ss[3])
        a0 = _hermitian(n, ss[4])
        g = 1j * linalg.gen_psd(n, ss[5])
        poly = MatrixPolynomial([a0 + g, r1, r2, r3])
        sector = Region.sector(0.0, math.pi / 3, closed=False)
        mats = {"R1": r1, "R2": r2, "R3": r3, "A0": a0, "G": g}
        head = a0 + g
        comps = [
            ("coupled cubic split", MultivariateMatrixPolynomial(n, 2, {
                (3, 3): r3, (3, 0): r3, (0, 3): r3,
                (2, 3): r2, (2, 0): r2,
                (3, 1): r1, (0, 1): r1,
                (0, 0): head}),
             Region.power(Region.sector(0.0, math.pi / 6, closed=False), 2)),
            ("mixed-term split", MultivariateMatrixPolynomial(n, 2, {
                (0, 3): r3, (1, 1): r2, (0, 1): r1, (0, 0): head}),
             Region.power(sector, 2)),
            ("homogenized split", MultivariateMatrixPolynomial(n, 2, {
                (1, 3): r3, (1, 2): r2, (0, 2): r1, (1, 0): head}),
             Region.power(Region.sector(0.0, math.pi / 4, closed=False), 2)),
        ]
        return FamilyInstance(tag, poly, sector, "stable", matrices=mats,
                              companions=comps)

    if tag == "palindromic-psd-cubic":
        r0 = _pd(n, ss[1])
        r1 = linalg.gen_psd(n, ss[2])
        r2 = linalg.gen_psd(n, ss[3])
        poly = MatrixPolynomial([r0, r1, r2, r0])
        sector = Region.sector(0.0, math.pi / 3, closed=False)
        return FamilyInstance(tag, poly, sector, "hyperstable",
                              matrices={"R0": r0, "R1": r1, "R2": r2})

    if tag == "angle-cubic":
        r0, r2 = _pd(n, ss[1]), _pd(n, ss[2])
        r1 = linalg.gen_psd(n, ss[3])
        j = linalg.gen_skew(n, ss[4])
        mid = r1 + j
        poly = MatrixPolynomial([r0, mid, mid, r2])
        angle = Region.sector(-math.pi / 4, math.pi / 4, closed=False)
        base = MatrixPolynomial([r0, 2 * mid, r2])
        return FamilyInstance(tag, poly, angle, "hyperstable",
                              matrices={"R0": r0, "R1": r1, "R2": r2, "J": j,
                                        "base": base})

    if tag == "pencil-aJ":
        r1 = _pd(n, ss[1])
        r0 = linalg.gen_psd(n, ss[2])
        j = linalg.gen_skew(n, ss[3])
        a = float(params.get("a", rng.uniform(0.5, 2.0)))
        if a < 0:
            raise ValueError("need a >= 0")
        poly = MatrixPolynomial([r0 + a * j, r1 + j])
        return FamilyInstance(tag, poly, rhp, "hyperstable",
                              matrices={"R0": r0, "R1": r1, "J": j},
                              params={"a": a})

    raise AssertionError("unreachable")


def _psd_defect(m):
    """How far below zero the Hermitian spectrum of m dips (0 for PSD)."""
    ev = linalg.hermitian_eigenvalues(m)
    return max(0.0, -float(ev[0])) if ev.size else 0.0


def _is_psd(m, notes, name):
    scale = max(linalg.spectral_norm(m), 1.0)
    try:
        defect = _psd_defect(m)
    except ValueError:
        notes.append(f"{name} is not Hermitian")
        return False
    if defect > _PSD_TOL * scale:
        notes.append(f"{name} has negative eigenvalue defect {defect:.2e}")
        return False
    return True


def _is_skew(m, notes, name):
    scale = max(linalg.spectral_norm(m), 1.0)
    if linalg.spectral_norm(m + m.conj().T) > 1e-12 * scale:
        notes.append(f"{name} is not skew-Hermitian")
        return False
    return True


def _common_kernel_trivial(mats, notes, label):
    stack = np.vstack(mats)
    s = np.linalg.svd(stack, compute_uv=False)
    scale = max(s[0], 1.0)
    if s[-1] <= _KERNEL_TOL * scale:
        notes.append(f"{label}: common kernel appears nontrivial "
                     f"(smallest stacked singular value {s[-1]:.2e})")
        return False
    return True


def check_family_hypotheses(fam):
    """Numerically re-check the assumptions of a family instance.

    Returns a StabilityVerdict on the hypotheses themselves; the notes in
    the evidence say which assumption failed and by how much.
    """
    ok, notes = _hypothesis_notes(fam)
    status = Verdict.HOLDS if ok else Verdict.VIOLATED
    return StabilityVerdict(status, evidence={"notes": notes})


def _hypothesis_notes(fam):
    m = fam.matrices
    notes = []
    ok = True
    tag = fam.tag
    if tag == "mgt":
        a, b, c = fam.params["a"], fam.params["b"], fam.params["c"]
        if not a > 1:
            ok = False
            notes.append(f"need a > 1, got {a}")
        if not b > c > 0:
            ok = False
            notes.append(f"need b > c > 0, got b={b}, c={c}")
        ev = linalg.hermitian_eigenvalues(m["R"])
        if ev[0] <= 0:
            ok = False
            notes.append("R is not positive definite")
    elif tag == "subadd":
        r = fam.params["r"]
        bound = (r * linalg.spectral_norm(m["A1"])
                 + r**2 * linalg.spectral_norm(m["A2"]))
        smin = linalg.sigma_min(m["A0"])
        if not bound < smin:
            ok = False
            notes.append(f"need r||A1|| + r^2||A2|| < sigma_min(A0), "
                         f"got {bound:.4g} vs {smin:.4g}")
        notes.append(f"margin sigma_min(A0) - bound = {smin - bound:.4g}")
    elif tag == "ph-quadratic":
        ok &= all(_is_psd(m[k], notes, k) for k in ("R0", "R1", "R2"))
        ok &= _is_skew(m["J"], notes, "J")
        ok &= _common_kernel_trivial([m["R0"], m["R1"], m["R2"], m["J"]],
                                     notes, "ker R0+R1+R2+J")
    elif tag == "ph-corollary-Q":
        q = m["Q"]
        qa2 = q.conj().T @ m["A2"]
        qa0 = q.conj().T @ m["A0"]
        ok &= _is_psd(qa2, notes, "Q*A2")
        ok &= _is_psd(qa0, notes, "Q*A0")
        ok &= _is_psd(m["R"], notes, "R")
        ok &= _is_skew(m["J"], notes, "J")
        ok &= _common_kernel_trivial(
            [qa0, q.conj().T @ m["R"] @ q, q.conj().T @ m["J"] @ q, qa2],
            notes, "compressed kernels")
    elif tag == "psd-cubic-sector":
        ok &= all(_is_psd(m[k], notes, k) for k in ("R1", "R2", "R3"))
        ok &= _is_psd(-1j * m["G"], notes, "-iG")
        ok &= _is_skew(m["G"], notes, "G")
        herm_defect = linalg.spectral_norm(m["A0"] - m["A0"].conj().T)
        if herm_defect > 1e-12 * max(linalg.spectral_norm(m["A0"]), 1.0):
            ok = False
            notes.append("A0 is not Hermitian")
        ok &= _common_kernel_trivial(
            [m["G"], m["A0"], m["R1"], m["R2"], m["R3"]], notes, "kernel condition")
    elif tag == "palindromic-psd-cubic":
        ok &= all(_is_psd(m[k], notes, k) for k in ("R0", "R1", "R2"))
        if not eigenvalues(fam.poly).regular:
            ok = False
            notes.append("polynomial is irregular")
    elif tag == "angle-cubic":
        ok &= all(_is_psd(m[k], notes, k) for k in ("R0", "R1", "R2"))
        ok &= _is_skew(m["J"], notes, "J")
    elif tag == "pencil-aJ":
        ok &= _is_psd(m["R0"], notes, "R0")
        ok &= _is_psd(m["R1"], notes, "R1")
        ok &= _is_skew(m["J"], notes, "J")
        if fam.params["a"] < 0:
            ok = False
            notes.append("need a >= 0")
    else:
        raise ValueError(f"unknown family tag {tag!r}")
    return bool(ok), notes


def verify_family_claim(fam, nx=3, budget=32, seed=0, samples=60,
                        tol=DEFAULT_BOUNDARY_TOL):
    """Collect evidence that the family's region claim holds for an instance."""
    hyp = check_family_hypotheses(fam)
    hyp_ok, notes = hyp.status is Verdict.HOLDS, hyp.evidence["notes"]
    stab = is_stable(fam.poly, fam.region, tol)
    survey = None
    ok = hyp_ok and stab.status is Verdict.HOLDS
    if fam.claim == "hyperstable":
        survey = hyper_survey(fam.poly, fam.region, nx, budget=budget, seed=seed,
                              tol=tol, candidate_map=fam.candidate_map)
        ok = ok and survey.verdict == "all-certified"
    comp_reports = []
    for label, mv, prod_region in fam.companions:
        v = mv_stability_sample(mv, prod_region, samples, seed)
        comp_reports.append((label, v))
        ok = ok and v.status is Verdict.HOLDS
    return FamilyReport(fam.tag, hyp_ok, notes, stab, survey, comp_reports, bool(ok))
