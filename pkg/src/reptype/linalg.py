"""Exact dense linear algebra over a FieldSpec.

Matrices are plain ``np.int64`` arrays of element codes; every routine takes
the field as its first argument.  Pivoting is always "first nonzero entry",
so results are reproducible bit for bit.
"""
from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch
from .field import FieldSpec


def asmat(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def add(F: FieldSpec, a, b) -> np.ndarray:
    return F.add_table[np.asarray(a), np.asarray(b)]


def sub(F: FieldSpec, a, b) -> np.ndarray:
    return F.sub_table[np.asarray(a), np.asarray(b)]


def neg(F: FieldSpec, a) -> np.ndarray:
    return F.neg_table[np.asarray(a)]


def scale(F: FieldSpec, c: int, a) -> np.ndarray:
    return F.mul_table[int(c), np.asarray(a)]


def _int_matmul(a: np.ndarray, b: np.ndarray, bound: int) -> np.ndarray:
    # float64 BLAS is exact while partial sums stay below 2**53
    if a.shape[-1] * bound < 2 ** 52:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    return a @ b


def matmul(F: FieldSpec, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    p, e = F.p, F.e
    bound = (p - 1) ** 2
    if e == 1:
        return _int_matmul(a, b, bound) % p
    d = F.digits
    ad, bd = d[a], d[b]
    conv = np.zeros(a.shape[:-1] + b.shape[1:] + (2 * e - 1,), dtype=np.int64)
    for i in range(e):
        for j in range(e):
            conv[..., i + j] += _int_matmul(ad[..., i], bd[..., j], bound)
    return F._reduce_coeffs(conv % p)


def matpow(F: FieldSpec, a, n: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    result = identity(a.shape[0])
    base = a
    while n:
        if n & 1:
            result = matmul(F, result, base)
        base = matmul(F, base, base)
        n >>= 1
    return result


def kronecker(F: FieldSpec, a, b) -> np.ndarray:
    a, b = asmat(a), asmat(b)
    (ra, ca), (rb, cb) = a.shape, b.shape
    out = F.mul_table[a[:, None, :, None], b[None, :, None, :]]
    return out.reshape(ra * rb, ca * cb)


def lincomb(F: FieldSpec, coeffs, mats) -> np.ndarray:
    """Sum of coeffs[i] * mats[i] for a stack of equally shaped arrays."""
    mats = np.asarray(mats, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.int64).reshape(1, -1)
    if mats.shape[0] == 0:
        raise DimensionMismatch("empty stack")
    flat = mats.reshape(mats.shape[0], -1)
    return matmul(F, coeffs, flat).reshape(mats.shape[1:])


def rref(F: FieldSpec, m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    r_mat = asmat(m).copy()
    rows, cols = r_mat.shape
    pivots: list[int] = []
    r = 0
    mul, inv, subt, p = F.mul_table, F.inv_table, F.sub_table, F.p
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(r_mat[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            r_mat[[r, i]] = r_mat[[i, r]]
        lead = r_mat[r, c]
        if lead != 1:
            r_mat[r, c:] = mul[inv[lead], r_mat[r, c:]]
        others = np.flatnonzero(r_mat[:, c])
        others = others[others != r]
        if others.size:
            factors = r_mat[others, c]
            prow = r_mat[r, c:]
            if F.e == 1:
                r_mat[others, c:] = (r_mat[others, c:] - np.outer(factors, prow)) % p
            else:
                r_mat[others, c:] = subt[r_mat[others, c:], mul[factors[:, None], prow[None, :]]]
        pivots.append(c)
        r += 1
    return r_mat, pivots


def rank(F: FieldSpec, m) -> int:
    m = asmat(m)
    if m.size == 0:
        return 0
    return len(rref(F, m)[1])


def kernel_basis(F: FieldSpec, m, return_free: bool = False):
    """Columns spanning the right null space of ``m``.

    The basis is the standard one read off the RREF: column k has a 1 in
    the k-th free position and 0 in the other free positions, so the
    coordinates of a kernel vector are its entries at ``free``.
    """
    m = np.asarray(m, dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    cols = m.shape[1]
    if m.shape[0] == 0:
        k = identity(cols)
        return (k, list(range(cols))) if return_free else k
    r_mat, pivots = rref(F, m)
    free = [c for c in range(cols) if c not in set(pivots)]
    k = zeros(cols, len(free))
    if free:
        k[free, np.arange(len(free))] = 1
        if pivots:
            k[pivots, :] = F.neg_table[r_mat[:len(pivots)][:, free]]
    return (k, free) if return_free else k


def left_kernel_basis(F: FieldSpec, m) -> np.ndarray:
    """Rows spanning {v : v m = 0}."""
    return kernel_basis(F, asmat(m).T).T


def row_space(F: FieldSpec, m) -> np.ndarray:
    """RREF basis (nonzero rows) of the row space."""
    m = asmat(m)
    if m.size == 0:
        return zeros(0, m.shape[1])
    r_mat, pivots = rref(F, m)
    return r_mat[:len(pivots)]


def column_space(F: FieldSpec, m) -> np.ndarray:
    """Columns forming a basis of the column space (RREF of the transpose)."""
    return row_space(F, asmat(m).T).T


def solve(F: FieldSpec, a, b):
    """Some x with a x = b, or None when the system is inconsistent."""
    a = asmat(a)
    b = np.asarray(b, dtype=np.int64)
    vector = b.ndim == 1
    bm = b.reshape(-1, 1) if vector else b
    if bm.shape[0] != a.shape[0]:
        raise DimensionMismatch(f"rhs has {bm.shape[0]} rows, matrix has {a.shape[0]}")
    n = a.shape[1]
    r_mat, pivots = rref(F, np.hstack([a, bm]))
    if pivots and pivots[-1] >= n:
        return None
    x = zeros(n, bm.shape[1])
    if pivots:
        x[pivots, :] = r_mat[:len(pivots), n:]
    return x[:, 0] if vector else x


def inverse(F: FieldSpec, m) -> np.ndarray:
    m = asmat(m)
    n = m.shape[0]
    if m.shape != (n, n):
        raise DimensionMismatch("inverse of a non-square matrix")
    r_mat, pivots = rref(F, np.hstack([m, identity(n)]))
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r_mat[:, n:]


def is_invertible(F: FieldSpec, m) -> bool:
    m = asmat(m)
    return m.shape[0] == m.shape[1] and rank(F, m) == m.shape[0]


def batch_nonsingular(F: FieldSpec, stack) -> np.ndarray:
    """Invertibility of each square matrix in a (B, n, n) stack."""
    s = np.array(stack, dtype=np.int64, copy=True)
    bsz, n, _ = s.shape
    ok = np.ones(bsz, dtype=bool)
    mul, inv, subt = F.mul_table, F.inv_table, F.sub_table
    idx = np.arange(bsz)
    for c in range(n):
        sub_col = s[:, c:, c]
        has = sub_col != 0
        ok &= has.any(axis=1)
        prow = c + np.argmax(has, axis=1)
        tmp = s[idx, prow].copy()
        s[idx, prow] = s[:, c]
        s[:, c] = tmp
        lead = s[:, c, c]
        s[:, c, :] = mul[inv[lead][:, None], s[:, c, :]]
        factors = s[:, c + 1:, c]
        s[:, c + 1:, :] = subt[s[:, c + 1:, :], mul[factors[:, :, None], s[:, c, None, :]]]
    return ok


class Subspace:
    """A subspace of F^n held as an RREF row basis."""

    def __init__(self, F: FieldSpec, vectors, n: int | None = None):
        vectors = np.asarray(vectors, dtype=np.int64)
        if vectors.ndim == 1:
            vectors = vectors.reshape(1, -1) if vectors.size else vectors.reshape(0, n or 0)
        if n is None:
            n = vectors.shape[1]
        self.field = F
        self.n = n
        if vectors.shape[0] == 0:
            self.basis, self.pivots = zeros(0, n), []
        else:
            r_mat, pivots = rref(F, vectors)
            self.basis, self.pivots = r_mat[:len(pivots)], pivots

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v) -> np.ndarray:
        """Normal form of v modulo the subspace (zero at every pivot)."""
        v = np.asarray(v, dtype=np.int64)
        if not self.pivots:
            return v.copy()
        c = v[..., self.pivots]
        return sub(self.field, v, matmul(self.field, c, self.basis))

    def coords(self, v) -> np.ndarray:
        """Coordinates of vectors already known to lie in the subspace."""
        return np.asarray(v, dtype=np.int64)[..., self.pivots]

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def complement_indices(self) -> list[int]:
        piv = set(self.pivots)
        return [i for i in range(self.n) if i not in piv]
