import numpy as np
import pytest

from reptype import linalg as la
from reptype.algebra import (Presentation, abelian_table, augmentation, canonical_key,
                             change_generators, close_presentation, dihedral_table, group_algebra,
                             quotient_by_ideal, radical, regular_module, satisfies)
from reptype.errors import InconsistentRelations, InputError, NonTerminating, NotAGroup, \
    UnsupportedClass
from reptype.field import FieldSpec
from reptype.repcert import corpus_algebra, corpus_names, corpus_presentation

F2, F3 = FieldSpec(2), FieldSpec(3)


def pres(F, gens, rels, bound=8):
    return close_presentation(Presentation(F, gens, rels, bound))


def test_closure_examples():
    a = pres(F2, ("x", "y"), ("x^2", "y^2", "xy", "yx"), 4)
    assert a.dim == 3 and a.labels == ("1", "x", "y")
    assert pres(F2, ("x",), ("x^2",)).dim == 2
    assert corpus_algebra("dihedral8").dim == 8


def test_hopf_presentations_have_dimension_p_cubed():
    assert corpus_algebra("c5_3").dim == 27
    assert corpus_algebra("c6_3").dim == 27
    assert corpus_algebra("c5_2").dim == 8
    assert corpus_algebra("c6_2").dim == 8


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_tables_are_valid(name):
    a = corpus_algebra(name)
    assert a.check_associative() and a.check_unit() and a.check_relations()
    assert a.validate() == []
    assert satisfies(a, corpus_presentation(name))


def test_group_algebra_examples():
    c2 = group_algebra(abelian_table(2), F2)
    assert c2.dim == 2
    # x = g - 1 presents k[x]/(x^2)
    k = pres(F2, ("x",), ("x^2",))
    assert canonical_key(change_generators(c2, ["g1+1"], names=("x",))) == canonical_key(k)
    assert group_algebra(abelian_table(3, 3), F3).dim == 9
    d8 = group_algebra(dihedral_table(4), F2)
    assert d8.dim == 8 and d8.kind == "group"
    assert d8.check_associative()


def test_group_algebra_rejects_non_groups():
    bad = np.array([[0, 1], [1, 1]])
    with pytest.raises(NotAGroup):
        group_algebra(bad, F2)


def test_radical_examples():
    a = pres(F2, ("x",), ("x^2",))
    assert radical(a).tolist() == [[0, 1]]
    klein = group_algebra(abelian_table(2, 2), F2)
    assert radical(klein).shape[0] == 3
    assert klein.radical_data.kind == "p-group"
    d8 = group_algebra(dihedral_table(4), F2)
    assert radical(d8).shape[0] == 7
    # the augmentation kills the radical and sends group elements to 1
    eps = augmentation(d8)
    assert not la.matmul(F2, radical(d8), eps.reshape(-1, 1)).any()
    assert eps.tolist() == [1] * 8


def _rad_powers(a, rad):
    """Row bases of rad^1, rad^2, ... up to the first zero power."""
    powers = [rad]
    while powers[-1].shape[0]:
        p = powers[-1]
        prods = a.mul_many(np.repeat(p, len(rad), axis=0), np.tile(rad, (len(p), 1)))
        powers.append(la.row_space(a.field, prods))
    return powers


@pytest.mark.parametrize("name,loewy", [("kleinfour", 3), ("dihedral8", 5), ("elab_3_2", 5),
                                        ("qci_7", 3), ("c6_2", 5), ("poly_trunc_5", 5)])
def test_radical_is_nilpotent_ideal_of_codim_one(name, loewy):
    a = corpus_algebra(name)
    rd = a.radical_data
    assert rd.basis.shape[0] == a.dim - 1
    powers = _rad_powers(a, rd.basis)
    # rad^L = 0 and rad^(L-1) != 0
    assert rd.loewy_length == len(powers) == loewy


def test_semisimple_group_algebra_unsupported():
    with pytest.raises(UnsupportedClass):
        group_algebra(abelian_table(2), F3).radical_data


def test_quotient_examples():
    c5 = corpus_algebra("c5_3")
    q = quotient_by_ideal(c5, ["xy-yx"])
    assert q.dim == 9
    assert canonical_key(q) == canonical_key(corpus_algebra("elab_3_2"))
    a = pres(F2, ("x",), ("x^2",))
    assert quotient_by_ideal(a, []).dim == 2
    assert quotient_by_ideal(a, ["x"]).dim == 1
    assert quotient_by_ideal(a, ["x+1"]).is_zero


def test_c6_quotient_matches_as_well():
    q = quotient_by_ideal(corpus_algebra("c6_3"), ["xy-yx"])
    assert canonical_key(q) == canonical_key(corpus_algebra("elab_3_2"))


def test_c6_at_two_rebased_is_dihedral():
    """x -> x + y turns the c6 relations into those of the dihedral presentation."""
    c6 = corpus_algebra("c6_2")
    rebased = change_generators(c6, ["x+y", "y"])
    assert satisfies(rebased, corpus_presentation("dihedral8"))
    assert canonical_key(rebased) == canonical_key(corpus_algebra("dihedral8"))


def test_canonical_key_detects_non_isomorphic():
    assert canonical_key(corpus_algebra("kleinfour")) != canonical_key(
        pres(F2, ("x", "y"), ("x^2", "y^2", "xy")))


def test_regular_module_examples():
    a = pres(F2, ("x",), ("x^2",))
    r = regular_module(a)
    assert r.actions[0].tolist() == [[0, 0], [1, 0]]
    assert r.check_relations()
    d8 = regular_module(corpus_algebra("dihedral8"))
    assert d8.dim == 8
    assert not la.matmul(F2, d8.actions[0], d8.actions[0]).any()


def test_base_change_keeps_structure():
    a = corpus_algebra("elab_3_2")
    b = a.base_change(FieldSpec(3, 2))
    assert b.dim == a.dim and np.array_equal(b.structure, a.structure)
    with pytest.raises(InputError):
        a.base_change(FieldSpec(2))


def test_non_terminating_and_inconsistent():
    with pytest.raises(NonTerminating):
        pres(F2, ("x", "y"), ("xy",), 4)
    with pytest.raises(InconsistentRelations):
        pres(F2, ("x",), ("x^2+x+1", "x^2"), 4)


def test_central_elements_expand_to_commutators():
    p = Presentation(F3, ("x", "y"), ("x^3", "y^3"), 8, central=("xy-yx",))
    assert len(p.expanded_relations()) == 4
    with pytest.raises(InputError):
        Presentation(F3, ("x",), ("x^5",), 3)


def test_element_and_word_vectors():
    a = corpus_algebra("kleinfour")
    xy = a.element("xy")
    assert np.array_equal(a.mul(a.element("x"), a.element("y")), xy)
    assert np.array_equal(a.word_vector((0, 1)), xy)
    assert not a.element("x^2").any()
