import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import Truncated, trivial_betti
from reptype.algebra import regular_module
from reptype.field import FieldSpec
from reptype.errors import DimensionMismatch, TableTooShort, Unstable, ZeroCocycle
from reptype.module import direct_sum, is_isomorphic, trivial_module
from reptype.repcert import corpus_algebra, family_member
from reptype.resolution import (Cocycle, ComplexityEstimate, Periodicity, ResolutionTable,
                                carlson_module, cocycle_condition, cocycles,
                                complexity_estimate, cover_module, ext_dims, extend,
                                hilbert_growth, is_periodic, kernel_in_radical,
                                minimal_resolution, periodicity, projective_cover, syzygy,
                                trivial_resolution)


def fake_table(betti):
    return ResolutionTable("m", "a", len(betti) - 1, 4, list(betti), [1] * len(betti))


def test_projective_cover_examples():
    klein = corpus_algebra("kleinfour")
    c = projective_cover(trivial_module(klein))
    assert c.rank == 1 and c.epi.shape == (1, 4)
    assert c.epi[0].tolist() == klein.radical_data.augmentation.tolist()
    reg = regular_module(klein)
    c = projective_cover(reg)
    assert c.rank == 1 and c.kernel.shape[1] == 0
    e32 = corpus_algebra("elab_3_2")
    c = projective_cover(family_member(e32, "M", 1))
    assert c.rank == 1 and kernel_in_radical(c)


def test_syzygy_examples():
    klein = corpus_algebra("kleinfour")
    assert syzygy(regular_module(klein)).dim == 0
    dual = corpus_algebra("poly_trunc_2")
    k = trivial_module(dual)
    assert syzygy(k).dim == 1 and is_isomorphic(syzygy(k), k).verdict == "Yes"
    assert syzygy(trivial_module(klein)).dim == 3


def test_klein_four_against_brute_force_oracle():
    table = trivial_resolution(corpus_algebra("kleinfour"), 10)
    assert table.betti == [n + 1 for n in range(11)]
    assert table.betti == trivial_betti(Truncated(2, (2, 2)), 10)


@pytest.mark.parametrize("name,exps,p,cutoff", [
    ("elab_3_2", (3, 3), 3, 7), ("elab_2_3", (2, 2, 2), 2, 5), ("nfam_host", (4, 2), 2, 7),
    ("poly_trunc_5", (5,), 5, 6)])
def test_trivial_betti_against_oracle(name, exps, p, cutoff):
    table = trivial_resolution(corpus_algebra(name), cutoff)
    assert table.betti == trivial_betti(Truncated(p, exps), cutoff)


def test_resolution_examples():
    assert trivial_resolution(corpus_algebra("poly_trunc_2"), 10).betti == [1] * 11
    t = trivial_resolution(corpus_algebra("elab_3_2"), 10)
    assert all(b2 > b1 for b1, b2 in zip(t.betti, t.betti[1:]))
    second = np.diff(t.betti, n=2)
    assert not second[2:].any()


def test_elementary_abelian_rank_three_closed_form():
    t = trivial_resolution(corpus_algebra("elab_2_3"), 12)
    assert t.betti == [(n + 1) * (n + 2) // 2 for n in range(13)]
    assert hilbert_growth(t.betti) == (2, 3)


def test_extend_matches_fresh_resolution():
    k = trivial_module(corpus_algebra("dihedral8"))
    short = minimal_resolution(k, 4)
    assert extend(short, 9).betti == minimal_resolution(k, 9).betti


def test_periodicity_examples():
    assert is_periodic(trivial_module(corpus_algebra("poly_trunc_2"))) == 1
    d8 = corpus_algebra("dihedral8")
    for F in (d8.field, FieldSpec(2, 2)):
        a = d8.base_change(F) if F != d8.field else d8
        for lam in range(1, F.q):
            assert is_periodic(family_member(a, "M", lam)) == 2
    assert is_periodic(trivial_module(corpus_algebra("kleinfour")), 10) is None


def test_zero_parameter_dihedral_member_is_not_periodic():
    """x acts by zero, so M_0 is inflated from A/(x) and its Betti numbers grow."""
    d8 = corpus_algebra("dihedral8")
    t = minimal_resolution(family_member(d8, "M", 0), 10)
    assert t.betti == [n + 1 for n in range(11)]
    assert periodicity(t, 10).period is None


def test_complexity_examples():
    assert complexity_estimate(fake_table([1] * 13), 1).c_hat == 1
    assert complexity_estimate(fake_table([1] * 13)).c_hat == 1
    est = complexity_estimate(trivial_resolution(corpus_algebra("kleinfour"), 12),
                              Periodicity(None, 10))
    assert est.c_hat == 2 and est.evidence_lower == 2 and est.certified_lower == 0
    assert complexity_estimate(fake_table([1, 2, 3, 0] + [0] * 9)).c_hat == 0
    quad = [(n + 1) * (n + 2) // 2 for n in range(13)]
    assert complexity_estimate(fake_table(quad)).c_hat == 3
    with pytest.raises(TableTooShort):
        complexity_estimate(fake_table([1] * 5))


def test_evidence_needs_a_periodicity_search():
    t = fake_table([n + 1 for n in range(13)])
    assert complexity_estimate(t).evidence_lower is None
    assert complexity_estimate(t, Periodicity(None, 10)).evidence_lower == 2


def test_ext_dims_examples():
    assert ext_dims(trivial_module(corpus_algebra("poly_trunc_2")), 6) == [1] * 7
    assert ext_dims(trivial_module(corpus_algebra("kleinfour")), 6) == list(range(1, 8))
    reg = regular_module(corpus_algebra("kleinfour"))
    assert ext_dims(direct_sum(reg, reg), 4) == [2, 0, 0, 0, 0]


def test_hilbert_growth():
    assert hilbert_growth([1] * 10) == (0, 1)
    assert hilbert_growth(range(1, 12)) == (1, 2)
    with pytest.raises(Unstable):
        hilbert_growth([2 ** n for n in range(10)])
    with pytest.raises(Unstable):
        hilbert_growth([1, 2, 3])


def test_carlson_modules_klein_four():
    klein = corpus_algebra("kleinfour")
    table = trivial_resolution(klein, 8)
    zetas = list(cocycles(table, 1))
    assert len(zetas) == 3
    for z in zetas:
        lz = carlson_module(z, table)
        assert lz.dim == table.syzygy_dims[1] - 1 == 2
        assert is_periodic(lz, 8) in (1, 2)
    for n in (2, 3):
        for z in cocycles(table, n):
            assert carlson_module(z, table).dim == table.syzygy_dims[n] - 1


def test_carlson_rejects_bad_cocycles():
    table = trivial_resolution(corpus_algebra("kleinfour"), 4)
    with pytest.raises(ZeroCocycle):
        carlson_module(Cocycle(1, (0, 0)), table)
    with pytest.raises(DimensionMismatch):
        carlson_module(Cocycle(2, (1,)), table)


def test_minimal_resolution_cocycles_all_close():
    """Differentials land in the radical, so every map P_n -> k is a cocycle."""
    for name in ("kleinfour", "poly_trunc_3", "dihedral8"):
        table = trivial_resolution(corpus_algebra(name), 4)
        for n in range(4):
            assert all(cocycle_condition(table, z) for z in cocycles(table, n))


def test_free_module_has_no_syzygy():
    for name in ("kleinfour", "elab_3_2", "dihedral8", "qci_7"):
        a = corpus_algebra(name)
        for t in (1, 2):
            p = cover_module(trivial_module(a), t)
            assert p.dim == t * a.dim and syzygy(p).dim == 0


@pytest.mark.parametrize("name", ["kleinfour", "elab_3_2", "dihedral8", "nfam_host", "qci_7",
                                  "c6_2", "poly_trunc_3"])
def test_syzygy_dimension_recurrence(name):
    a = corpus_algebra(name)
    for m in (trivial_module(a), regular_module(a)):
        t = minimal_resolution(m, 8)
        assert t.recurrence_holds()
        assert t.syzygy_dims[0] == m.dim


pool = [("kleinfour", "trivial"), ("kleinfour", "M1"), ("poly_trunc_2", "trivial"),
        ("dihedral8", "M1"), ("dihedral8", "trivial"), ("elab_3_2", "M1"),
        ("elab_3_2", "trivial"), ("nfam_host", "trivial"), ("kleinfour", "regular"),
        ("dihedral8", "M0")]


def _module(name, which):
    a = corpus_algebra(name)
    if which == "trivial":
        return trivial_module(a)
    if which == "regular":
        return regular_module(a)
    return family_member(a, "M", int(which[1:]))


def _c_hat(m):
    t = minimal_resolution(m, 12)
    return complexity_estimate(t, periodicity(t, 10)).c_hat


@given(st.sampled_from(pool), st.sampled_from(pool))
def test_complexity_of_direct_sum_is_max(x, y):
    if x[0] != y[0]:
        y = (x[0], y[1]) if (x[0], y[1]) in pool else x
    m, n = _module(*x), _module(*y)
    assert _c_hat(direct_sum(m, n)) == max(_c_hat(m), _c_hat(n))


def test_csv_and_dict_layout():
    t = trivial_resolution(corpus_algebra("kleinfour"), 3)
    lines = t.to_csv().splitlines()
    assert lines[0] == "n,b_n,len_Pn,dim_syzygy"
    assert lines[1:] == ["0,1,4,1", "1,2,8,3", "2,3,12,5", "3,4,16,7"]
    assert t.to_dict()["rows"][2] == {"n": 2, "b_n": 3, "len_Pn": 12, "dim_syzygy": 5}
    assert isinstance(complexity_estimate(trivial_resolution(corpus_algebra("kleinfour"), 9)),
                      ComplexityEstimate)
