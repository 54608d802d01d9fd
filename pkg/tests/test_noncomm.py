import pytest
from hypothesis import given, strategies as st

from reptype import noncomm as nc
from reptype.errors import InconsistentRelations, InputError
from reptype.field import FieldSpec

F2, F3 = FieldSpec(2), FieldSpec(3)


def test_parse_basic_forms():
    assert nc.parse_poly(F3, ("x", "y"), "x^3") == {(0, 0, 0): 1}
    assert nc.parse_poly(F3, ("x", "y"), "xy - yx") == {(0, 1): 1, (1, 0): 2}
    assert nc.parse_poly(F3, ("x", "y"), "2(x+y)^2") == {
        (0, 0): 2, (0, 1): 2, (1, 0): 2, (1, 1): 2}
    assert nc.parse_poly(F2, ("x", "y"), "xyxy+yxyx") == {(0, 1, 0, 1): 1, (1, 0, 1, 0): 1}
    assert nc.parse_poly(F3, ("x",), "x - x") == {}


def test_parse_multichar_names_and_errors():
    assert nc.parse_poly(F2, ("a1", "b"), "a1*b") == {(0, 1): 1}
    with pytest.raises(InputError):
        nc.parse_poly(F2, ("x",), "x + z")
    with pytest.raises(InputError):
        nc.parse_poly(F2, ("x",), "(x")


words = st.lists(st.integers(0, 1), max_size=4).map(tuple)
polys = st.dictionaries(words, st.integers(1, 2), max_size=4)


@given(polys)
def test_format_parse_roundtrip(f):
    names = ("x", "y")
    f = nc.clean(f)
    assert nc.parse_poly(F3, names, nc.format_poly(F3, f, names) or "0") == f


@given(polys, polys, polys)
def test_poly_ring_laws(f, g, h):
    mul, add = nc.poly_mul, nc.poly_add
    assert mul(F3, mul(F3, f, g), h) == mul(F3, f, mul(F3, g, h))
    assert mul(F3, f, add(F3, g, h)) == add(F3, mul(F3, f, g), mul(F3, f, h))


def test_completion_commutative_truncation():
    rels = [nc.parse_poly(F3, ("x", "y"), r) for r in ("x^3", "y^3", "xy-yx")]
    rw = nc.complete(F3, rels, 8)
    ws, closed = nc.normal_words(rw, 2, 8)
    assert closed and len(ws) == 9
    # y x rewrites to x y
    assert rw.reduce({(1, 0): 1}) == {(0, 1): 1}


def test_completion_finds_overlap_consequence():
    # x^2 = y and x^3 = 0 force xy = yx = 0 and y^2 = 0
    rels = [nc.parse_poly(F2, ("x", "y"), r) for r in ("xx+y", "xxx")]
    rw = nc.complete(F2, rels, 6)
    assert rw.reduce({(0, 1): 1}) == {}
    assert rw.reduce({(1, 1): 1}) == {}
    ws, closed = nc.normal_words(rw, 2, 6)
    # deg-lex rewrites xx to y, leaving the basis 1, x, y
    assert closed and ws == [(), (0,), (1,)]


def test_unit_ideal_detected():
    rels = [nc.parse_poly(F2, ("x",), "x^2+x+1"), nc.parse_poly(F2, ("x",), "x^2")]
    with pytest.raises(InconsistentRelations):
        nc.complete(F2, rels, 4)


def test_open_normal_words_not_closed():
    rw = nc.complete(F2, [nc.parse_poly(F2, ("x", "y"), "xy")], 3)
    assert not nc.normal_words(rw, 2, 3)[1]
