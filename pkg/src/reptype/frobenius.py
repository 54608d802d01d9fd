"""Frobenius forms, the Nakayama automorphism, twisting, and the AR translate two ways."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .algebra import AlgebraTable
from .errors import NoFormFound, NotAutomorphism
from .module import ModuleRep, zero_module
from .resolution import projective_cover, syzygy_of_cover

EXHAUSTIVE_FORMS = 4096


@dataclass(frozen=True, eq=False)
class FrobeniusData:
    algebra: AlgebraTable
    functional: np.ndarray   # lambda over the basis
    gram: np.ndarray         # G[i, j] = lambda(b_i b_j)
    nakayama: np.ndarray     # column i is nu(b_i)
    source: str = ""

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.gram, self.gram.T))

    def nakayama_inverse(self) -> np.ndarray:
        return la.inverse(self.algebra.field, self.nakayama)

    def nakayama_order(self, limit: int = 10000) -> int:
        F = self.algebra.field
        eye = la.identity(self.algebra.dim)
        power = self.nakayama
        for k in range(1, limit + 1):
            if np.array_equal(power, eye):
                return k
            power = la.matmul(F, power, self.nakayama)
        raise ArithmeticError("Nakayama automorphism order exceeds limit")

    def to_dict(self) -> dict:
        return {"functional": self.functional.tolist(), "source": self.source,
                "symmetric": self.is_symmetric(),
                "nakayama_is_identity": bool(np.array_equal(
                    self.nakayama, la.identity(self.algebra.dim)))}


def gram_matrix(a: AlgebraTable, functional) -> np.ndarray:
    d = a.dim
    lam = np.asarray(functional, dtype=np.int64).reshape(d, 1)
    return la.matmul(a.field, a.structure.reshape(d * d, d), lam).reshape(d, d)


def nakayama(a: AlgebraTable, functional, gram=None) -> np.ndarray:
    """nu with lambda(x y) = lambda(y nu(x)); as a matrix, G^-1 G^T."""
    F = a.field
    gram = gram_matrix(a, functional) if gram is None else gram
    return la.matmul(F, la.inverse(F, gram), gram.T)


def _candidates(a: AlgebraTable):
    d = a.dim
    if a.kind == "group":
        lam = np.zeros(d, dtype=np.int64)
        lam[a.unit_index] = 1
        yield lam, "identity-coefficient"
    lam = np.zeros(d, dtype=np.int64)
    lam[d - 1] = 1
    yield lam, "longest-word-coefficient"


def _make(a: AlgebraTable, lam, source) -> FrobeniusData:
    gram = gram_matrix(a, lam)
    return FrobeniusData(a, np.asarray(lam, dtype=np.int64), gram, nakayama(a, lam, gram), source)


def find_frobenius_form(a: AlgebraTable, seed: int = 0, attempts: int = 64) -> FrobeniusData:
    """A functional with nondegenerate bilinear form.

    Canonical candidates first; then every functional when there are at
    most EXHAUSTIVE_FORMS of them, otherwise ``attempts`` seeded draws.
    """
    F, d = a.field, a.dim
    if d == 0:
        raise NoFormFound("zero algebra")
    for lam, src in _candidates(a):
        if la.is_invertible(F, gram_matrix(a, lam)):
            return _make(a, lam, src)
    flat = a.structure.reshape(d * d, d)

    def first_good(lams):
        grams = la.matmul(F, flat, lams.T).T.reshape(-1, d, d)
        ok = la.batch_nonsingular(F, grams)
        return lams[int(np.argmax(ok))] if ok.any() else None

    if F.q ** d <= EXHAUSTIVE_FORMS:
        lams = np.array(list(itertools.product(range(F.q), repeat=d)), dtype=np.int64)
        hit = first_good(lams)
        if hit is None:
            raise NoFormFound(f"none of the {F.q ** d} functionals is nondegenerate: "
                              f"{a.name or 'algebra'} is not Frobenius")
        return _make(a, hit, "exhaustive")
    rng = np.random.default_rng(seed)
    hit = first_good(rng.integers(0, F.q, size=(attempts, d)))
    if hit is None:
        raise NoFormFound(f"no nondegenerate functional among {attempts} random draws "
                          f"(evidence, not proof, that {a.name or 'algebra'} is not Frobenius)")
    return _make(a, hit, f"random(seed={seed})")


def is_automorphism(a: AlgebraTable, nu) -> bool:
    F, d = a.field, a.dim
    nu = np.asarray(nu, dtype=np.int64)
    if nu.shape != (d, d) or not la.is_invertible(F, nu):
        return False
    if not np.array_equal(la.matmul(F, nu, a.unit.reshape(-1, 1))[:, 0], a.unit):
        return False
    # nu(b_i b_j) = nu(b_i) nu(b_j)
    lhs = la.matmul(F, a.structure.reshape(d * d, d), nu.T)
    imgs = nu.T
    u = np.repeat(imgs, d, axis=0)
    v = np.tile(imgs, (d, 1))
    return bool(np.array_equal(lhs, a.mul_many(u, v)))


def check_form_identity(fd: FrobeniusData) -> bool:
    """lambda(b_i b_j) == lambda(b_j nu(b_i)) on all basis pairs."""
    a, F, d = fd.algebra, fd.algebra.field, fd.algebra.dim
    nu_imgs = fd.nakayama.T
    u = np.tile(la.identity(d), (d, 1))          # b_j
    v = np.repeat(nu_imgs, d, axis=0)             # nu(b_i)
    rhs = la.matmul(F, a.mul_many(u, v), fd.functional.reshape(-1, 1)).reshape(d, d)
    return bool(np.array_equal(fd.gram, rhs))


def twist(m: ModuleRep, nu, check: bool = True) -> ModuleRep:
    """Module with x acting as nu(x) acts on m."""
    a, F = m.algebra, m.field
    nu = np.asarray(nu, dtype=np.int64)
    if check and not is_automorphism(a, nu):
        raise NotAutomorphism("twisting map is not a unital algebra automorphism")
    if m.dim == 0:
        return m
    images = la.matmul(F, a.gen_vectors, nu.T)
    return ModuleRep(a, [m.act(v) for v in images], name=f"nu*{m.name}", check=check)


def ar_translate_omega(m: ModuleRep, fd: FrobeniusData) -> ModuleRep:
    """tau(m) as Omega^2 of the twist by nu^-1.

    With lambda(ab) = lambda(b nu(a)), the Nakayama functor D Hom(-, A) is
    the twist through nu^-1, so this is the convention that agrees with
    D Tr on non-symmetric algebras.
    """
    tw = twist(m, fd.nakayama_inverse())
    first = syzygy_of_cover(projective_cover(tw))
    return syzygy_of_cover(projective_cover(first), name=f"tau({m.name})")


def ar_translate_dtr(m: ModuleRep) -> ModuleRep:
    """D Tr(m) from a minimal presentation P1 -> P0 -> m.

    With rows w_k = (a_k1, .., a_kt) of the relation module inside A^t,
    Tr(m) = A^b / span{(a_ki b)_k : i, b}, a right module, and D Tr(m) is
    the annihilator of that span in the dual, with x acting by the
    transpose of right multiplication.
    """
    a, F = m.algebra, m.field
    d = a.dim
    c0 = projective_cover(m)
    omega = syzygy_of_cover(c0)
    if omega.dim == 0:
        return zero_module(a)
    c1 = projective_cover(omega)
    t, b = c0.rank, c1.rank
    # w_k in P0 coordinates: the kernel columns chosen as tops of omega
    rows = c0.kernel[:, c1.top_indices].T.reshape(b, t, d)
    right = np.stack([a.right_matrix(a.basis_vector(j)) for j in range(d)])
    span = _reduce_products(F, right, rows).reshape(t * d, b * d)
    w = la.kernel_basis(F, span)
    if w.shape[1] == 0:
        return zero_module(a)
    acts = []
    for g in range(a.ngens):
        rt = np.kron(np.eye(b, dtype=np.int64), a.right_matrix(a.gen_vectors[g]).T)
        acts.append(la.solve(F, w, la.matmul(F, rt, w)))
    return ModuleRep(a, acts, name=f"DTr({m.name})", check=False)


def _reduce_products(F, right, rows):
    """z[i, j, k, :] = right[j] @ rows[k, i] over F."""
    d = right.shape[0]
    b, t, _ = rows.shape
    flat_rows = rows.transpose(2, 0, 1).reshape(d, b * t)               # (d, b*t)
    prod = la.matmul(F, right.reshape(d * d, d), flat_rows)             # (j*r, k*i)
    prod = prod.reshape(d, d, b, t).transpose(3, 0, 2, 1)               # (i, j, k, r)
    return prod
