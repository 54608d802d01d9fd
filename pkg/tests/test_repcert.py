import numpy as np
import pytest

from reptype import linalg as la
from reptype.errors import FactorRuleRefused, InputError, QuotientMismatch, RelationViolation
from reptype.field import FieldSpec
from reptype.module import top
from reptype.repcert import (Certificate, certificate_digest, certify_factor_rule,
                             certify_wild_lemma, certify_wild_theorem, corpus_algebra, corpus_names,
                             default_scan_fields, family_member, member_flag, resolve_algebra,
                             scan_family, verify_trail)

F2, F3, F4, F9 = FieldSpec(2), FieldSpec(3), FieldSpec(2, 2), FieldSpec(3, 2)


@pytest.fixture(scope="module")
def elab_report():
    return scan_family(corpus_algebra("elab_3_2"), "M", [F3], algebra_ref="corpus:elab_3_2")


def test_family_M_examples():
    a = corpus_algebra("elab_3_2")
    m0 = family_member(a, "M", 0)
    assert not m0.actions[0].any()
    m1 = family_member(a, "M", 1)
    assert np.array_equal(m1.actions[0], m1.actions[1])
    for lam in range(3):
        m = family_member(a, "M", lam)
        assert m.dim == 2 and top(m)[1] == 1


def test_family_N_examples():
    host = corpus_algebra("nfam_host").base_change(F4)
    n1 = family_member(host, "N", 1)
    x = n1.actions[0]
    # one Jordan block: x^2 != 0
    assert la.matmul(F4, x, x).any()
    assert not family_member(host, "N", 0).actions[0].any()
    for lam in range(4):
        n = family_member(host, "N", lam)
        x, y = n.actions
        assert np.array_equal(la.matmul(F4, x, y), la.matmul(F4, y, x))
    assert member_flag("N", 0) and member_flag("M", 0) and not member_flag("M", 2)


def test_family_needs_two_radical_generators():
    with pytest.raises(RelationViolation):
        family_member(corpus_algebra("poly_trunc_3"), "M", 1)
    with pytest.raises(InputError):
        family_member(corpus_algebra("kleinfour"), "Q", 1)


def test_scan_elab_3_2(elab_report):
    r = elab_report
    assert len(r.members) == 3
    assert all(m.indecomposable == "AbsolutelyIndecomposable" for m in r.members)
    assert r.distinct_per_field == {"F_3": 3}
    for m in r.members:
        assert m.betti == list(range(1, 14))
        assert m.period is None


def test_certify_lemma_wild(elab_report):
    cert = certify_wild_lemma(elab_report)
    assert cert.verdict == "WildEvidence" and cert.is_wild
    assert any("lambda=0" in n for n in cert.notes)
    assert all(r["ok"] for r in verify_trail(cert))


def test_certify_lemma_tame():
    r = scan_family(corpus_algebra("dihedral8"), "M", [F2, F4])
    for m in r.members:
        if m.lam:
            assert m.period == 2 and m.tau_fixed
    cert = certify_wild_lemma(r)
    assert cert.verdict == "TameConsistent"


def test_certify_lemma_n_family():
    r = scan_family(corpus_algebra("nfam_host"), "N", [F2, F4])
    for m in r.members:
        if m.lam:
            assert m.period is None and m.betti[-1] > m.betti[-2]
    assert certify_wild_lemma(r).verdict == "WildEvidence"


def test_lemma_inconclusive_without_usable_members():
    r = scan_family(corpus_algebra("kleinfour"), "N", [F2])
    cert = certify_wild_lemma(r)
    assert cert.verdict == "Inconclusive"


def test_certify_theorem_examples():
    assert certify_wild_theorem(corpus_algebra("elab_2_3")).verdict == "WildAssumingFg"
    assert certify_wild_theorem(corpus_algebra("kleinfour")).verdict == "Inconclusive"
    assert certify_wild_theorem(corpus_algebra("poly_trunc_2")).verdict == "Inconclusive"


def test_factor_rule(elab_report):
    known = certify_wild_lemma(elab_report)
    for name in ("c5_3", "c6_3"):
        cert = certify_factor_rule(corpus_algebra(name), ["xy-yx"], known,
                                   algebra_ref=f"corpus:{name}")
        assert cert.verdict == "WildEvidence" and cert.strategy == "factor"
        assert cert.evidence[0]["check"] == "factor_quotient"
        results = verify_trail(cert)
        assert results[0]["ok"]
    tame = certify_wild_lemma(scan_family(corpus_algebra("dihedral8"), "M", [F2]))
    with pytest.raises(FactorRuleRefused):
        certify_factor_rule(corpus_algebra("c5_2"), ["xy-yx"], tame)
    with pytest.raises(QuotientMismatch):
        certify_factor_rule(corpus_algebra("c5_3"), ["x"], known)


def test_tampered_trail_fails(elab_report):
    cert = certify_wild_lemma(elab_report)
    data = cert.to_dict()
    data["evidence"][1]["expected"] = [1] * 13
    bad = Certificate.from_dict(data)
    results = verify_trail(bad)
    assert not results[1]["ok"] and sum(not r["ok"] for r in results) == 1


def test_certificate_roundtrip_and_digest(elab_report):
    cert = certify_wild_lemma(elab_report)
    again = Certificate.from_dict(cert.to_dict())
    assert certificate_digest(again) == certificate_digest(cert)
    with pytest.raises(InputError):
        Certificate.from_dict({"verdict": "WildEvidence"})


def test_corpus_and_references():
    assert "dihedral8" in corpus_names() and "qci_7" in corpus_names()
    assert resolve_algebra("corpus:elab_2_2").dim == 4
    assert resolve_algebra("dihedral8").dim == 8
    with pytest.raises(InputError):
        resolve_algebra("nowhere")
    assert [F.q for F in default_scan_fields(corpus_algebra("elab_3_2"))] == [3, 9, 27]
