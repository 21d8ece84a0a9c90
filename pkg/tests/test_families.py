import numpy as np
import pytest

from polystab.families import (FAMILY_TAGS, check_family_hypotheses,
                               make_family, verify_family_claim)
from polystab.matpoly import is_stable
from polystab.verdict import Verdict


def test_tag_catalog():
    assert FAMILY_TAGS == ("mgt", "subadd", "ph-quadratic", "ph-corollary-Q",
                           "psd-cubic-sector", "palindromic-psd-cubic",
                           "angle-cubic", "pencil-aJ")


@pytest.mark.parametrize("tag", FAMILY_TAGS)
def test_every_family_constructs_and_satisfies_hypotheses(tag):
    fam = make_family(tag, n=3, seed=0)
    assert fam.tag == tag
    assert fam.claim in ("stable", "hyperstable")
    hyp = check_family_hypotheses(fam)
    assert hyp.status is Verdict.HOLDS, hyp.evidence
    assert is_stable(fam.poly, fam.region).status is Verdict.HOLDS


@pytest.mark.parametrize("tag", FAMILY_TAGS)
def test_family_generation_is_deterministic(tag):
    a = make_family(tag, n=3, seed=11)
    b = make_family(tag, n=3, seed=11)
    assert np.array_equal(a.poly.coeffs, b.poly.coeffs)
    c = make_family(tag, n=3, seed=12)
    assert not np.array_equal(a.poly.coeffs, c.poly.coeffs)


def test_make_family_validates_parameters():
    with pytest.raises(ValueError):
        make_family("mgt", a=1.0)  # needs a > 1
    with pytest.raises(ValueError):
        make_family("mgt", a=2.0, b=1.0, c=1.0)  # needs b > c
    with pytest.raises(ValueError):
        make_family("subadd", r=0.0)
    with pytest.raises(ValueError):
        make_family("pencil-aJ", a=-1.0)
    with pytest.raises(ValueError):
        make_family("no-such-family")


@pytest.mark.parametrize("tag", ("mgt", "ph-quadratic", "ph-corollary-Q",
                                 "pencil-aJ"))
def test_verify_family_claim_hyperstable_tags(tag):
    fam = make_family(tag, n=3, seed=2)
    rep = verify_family_claim(fam, nx=2, budget=16, seed=0, samples=40)
    assert rep.hypotheses_ok
    assert rep.stability.status is Verdict.HOLDS
    assert rep.survey is not None and rep.survey.verdict == "all-certified"
    assert rep.ok


@pytest.mark.parametrize("tag", ("subadd", "psd-cubic-sector", "angle-cubic"))
def test_verify_family_claim_stable_tags(tag):
    fam = make_family(tag, n=3, seed=2)
    rep = verify_family_claim(fam, nx=2, budget=16, seed=0, samples=40)
    assert rep.hypotheses_ok
    assert rep.stability.status is Verdict.HOLDS
    assert rep.ok


def test_companions_present_where_claimed():
    assert make_family("subadd", seed=1).companions
    assert make_family("ph-quadratic", seed=1).companions
    assert len(make_family("psd-cubic-sector", seed=1).companions) == 3


def test_corollary_q_candidate_map():
    fam = make_family("ph-corollary-Q", n=3, seed=4)
    assert fam.candidate_map is not None
    x = np.array([1.0, 2.0, -1.0], dtype=np.complex128)
    cands = fam.candidate_map(x)
    q = fam.matrices["Q"]
    assert any(np.allclose(c, q @ x) for c in cands)
