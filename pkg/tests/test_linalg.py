import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import rank_mod_p
from reptype import linalg as la
from reptype.errors import DimensionMismatch
from reptype.field import FieldSpec

F2, F3, F4, F9 = FieldSpec(2), FieldSpec(3), FieldSpec(2, 2), FieldSpec(3, 2)


def test_rref_examples():
    r, piv = la.rref(F2, la.identity(2))
    assert np.array_equal(r, la.identity(2)) and piv == [0, 1]
    r, piv = la.rref(F2, la.zeros(3, 3))
    assert not r.any() and piv == []
    r, piv = la.rref(F2, [[1, 1], [1, 1]])
    assert r.tolist() == [[1, 1], [0, 0]] and piv == [0]


def test_kernel_examples():
    assert la.kernel_basis(F2, la.identity(3)).shape == (3, 0)
    assert la.kernel_basis(F2, la.zeros(2, 3)).shape == (3, 3)
    assert la.kernel_basis(F2, [[1, 1]]).T.tolist() == [[1, 1]]


def test_solve_examples():
    b = np.array([1, 2, 0])
    assert np.array_equal(la.solve(F3, la.identity(3), b), b)
    assert la.solve(F3, la.zeros(2, 2), [1, 0]) is None
    assert la.solve(F3, [[1, 1], [0, 1]], [2, 1]).tolist() == [1, 1]
    with pytest.raises(DimensionMismatch):
        la.solve(F3, la.identity(2), [1, 2, 0])


def test_kronecker_examples():
    assert np.array_equal(la.kronecker(F2, la.identity(2), la.identity(3)), la.identity(6))
    assert not la.kronecker(F2, [[1, 1], [0, 1]], la.zeros(2, 2)).any()
    e11 = np.array([[1, 0], [0, 0]])
    e12 = np.array([[0, 1], [0, 0]])
    k = la.kronecker(F2, e11, e12)
    assert k.shape == (4, 4) and k.sum() == 1 and k[0, 1] == 1


@pytest.mark.parametrize("F", [F2, F3, F4, F9, FieldSpec(5), FieldSpec(7)], ids=lambda F: F.name)
def test_rank_nullity_200(F):
    rng = np.random.default_rng(F.q)
    for _ in range(200):
        r, c = rng.integers(1, 9, size=2)
        m = rng.integers(0, F.q, size=(r, c))
        if rng.random() < 0.3:       # force dependencies
            m[-1] = la.add(F, m[0], m[-1]) if r > 1 else m[-1]
        k = la.kernel_basis(F, m)
        assert la.rank(F, m) + k.shape[1] == c
        assert not la.matmul(F, m, k).any()
        if F.e == 1:
            assert la.rank(F, m) == rank_mod_p(m.tolist(), F.p, c)


matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(0, 3), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


@given(matrices)
def test_rref_idempotent_and_rowspace_preserved(rows):
    m = np.array(rows) % F4.q
    r, piv = la.rref(F4, m)
    r2, piv2 = la.rref(F4, r)
    assert np.array_equal(r, r2) and piv == piv2
    assert la.rank(F4, np.vstack([m, r])) == len(piv)
    for i, c in enumerate(piv):
        assert r[i, c] == 1 and np.count_nonzero(r[:, c]) == 1


@given(matrices)
def test_solve_consistent_systems(rows):
    m = np.array(rows) % 3
    x = np.arange(m.shape[1]) % 3
    b = la.matmul(F3, m, x.reshape(-1, 1))[:, 0]
    y = la.solve(F3, m, b)
    assert np.array_equal(la.matmul(F3, m, y.reshape(-1, 1))[:, 0], b)


@given(st.integers(0, 10_000))
def test_inverse_and_batch_nonsingular(seed):
    rng = np.random.default_rng(seed)
    stack = rng.integers(0, F9.q, size=(12, 4, 4))
    flags = la.batch_nonsingular(F9, stack)
    for m, ok in zip(stack, flags):
        assert ok == la.is_invertible(F9, m)
        if ok:
            assert np.array_equal(la.matmul(F9, m, la.inverse(F9, m)), la.identity(4))


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        la.inverse(F2, [[1, 1], [1, 1]])


def test_matmul_large_entries_prime_field():
    F = FieldSpec(7)
    rng = np.random.default_rng(0)
    a = rng.integers(0, 7, size=(40, 300))
    b = rng.integers(0, 7, size=(300, 30))
    assert np.array_equal(la.matmul(F, a, b), (a @ b) % 7)


def test_subspace_operations():
    s = la.Subspace(F3, [[1, 0, 2], [0, 1, 1]])
    assert s.dim == 2 and s.complement_indices() == [2]
    v = la.add(F3, la.scale(F3, 2, s.basis[0]), s.basis[1])
    assert s.contains(v)
    assert s.coords(v).tolist() == [2, 1]
    assert not s.contains([0, 0, 1])
    assert la.row_space(F3, [[1, 1, 0], [2, 2, 0]]).shape == (1, 3)
    assert la.matpow(F3, [[1, 1], [0, 1]], 3).tolist() == [[1, 0], [0, 1]]
