"""Minimal projective resolutions over local algebras, complexity, Carlson modules."""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg as la
from .errors import (DimensionMismatch, NotACocycle, TableTooShort, Unstable, ZeroCocycle)
from .module import (ModuleRep, is_isomorphic, radical_submodule, restrict, trivial_module,
                     zero_module)

DEFAULT_CUTOFF = 12
DEFAULT_DMAX = 10


@dataclass
class Cover:
    """P = A^t -> M sending the unit of block i to the top representative v_i."""

    module: ModuleRep
    top_indices: list[int]           # v_i = e_{top_indices[i]}
    epi: np.ndarray                  # (dim M, t * dim A)
    kernel: np.ndarray               # columns spanning ker(epi) inside P
    kernel_free: list[int]           # coordinates of kernel vectors

    @property
    def rank(self) -> int:
        return len(self.top_indices)


def top_indices(m: ModuleRep) -> list[int]:
    """Coordinates whose basis vectors lift a basis of top(m)."""
    rad = radical_submodule(m)
    return la.Subspace(m.field, rad.T, m.dim).complement_indices()


def _block_action(a, g: int, vecs: np.ndarray, t: int) -> np.ndarray:
    """Generator g acting on columns of A^t (block-diagonal left multiplication)."""
    d = a.dim
    blocks = vecs.reshape(t, d, -1)
    out = np.stack([la.matmul(a.field, a.gen_left_matrices[g], blk) for blk in blocks])
    return out.reshape(t * d, -1)


def projective_cover(m: ModuleRep) -> Cover:
    F = m.field
    tops = top_indices(m)
    t = len(tops)
    if t == 0:
        return Cover(m, [], la.zeros(m.dim, 0), la.zeros(0, 0), [])
    acts = m.basis_actions                      # (d, m, m)
    epi = np.concatenate([acts[:, :, c].T for c in tops], axis=1)
    if la.rank(F, epi) != m.dim:
        raise ArithmeticError("cover map is not surjective")
    kernel, free = la.kernel_basis(F, epi, return_free=True)
    cover = Cover(m, tops, epi, kernel, free)
    if not kernel_in_radical(cover):
        raise ArithmeticError("cover is not minimal: kernel leaves rad(P)")
    return cover


def cover_module(m: ModuleRep, t: int | None = None) -> ModuleRep:
    """The free module A^t as a ModuleRep."""
    a = m.algebra
    t = len(top_indices(m)) if t is None else t
    if t == 0:
        return zero_module(a)
    acts = [np.kron(np.eye(t, dtype=np.int64), a.gen_left_matrices[g]) for g in range(a.ngens)]
    return ModuleRep(a, acts, name=f"A^{t}", check=False)


def kernel_in_radical(cover: Cover) -> bool:
    """Minimality: every kernel vector has zero augmentation in each block."""
    a = cover.module.algebra
    if cover.kernel.shape[1] == 0:
        return True
    eps = a.radical_data.augmentation
    blocks = cover.kernel.reshape(cover.rank, a.dim, -1)
    vals = la.matmul(a.field, eps.reshape(1, -1), blocks.transpose(1, 0, 2).reshape(a.dim, -1))
    return not np.any(vals)


def syzygy_of_cover(cover: Cover, name: str = "") -> ModuleRep:
    a = cover.module.algebra
    k = cover.kernel
    if k.shape[1] == 0:
        return zero_module(a)
    acts = [_block_action(a, g, k, cover.rank)[cover.kernel_free, :]
            for g in range(a.ngens)]
    return ModuleRep(a, acts, name=name, check=False)


def syzygy(m: ModuleRep) -> ModuleRep:
    return syzygy_of_cover(projective_cover(m), name=f"Omega({m.name})")


@dataclass
class ResolutionTable:
    module_name: str
    algebra_name: str
    cutoff: int
    algebra_dim: int
    betti: list[int]
    syzygy_dims: list[int]
    syzygies: list[ModuleRep] = field(default_factory=list, repr=False)
    covers: list[Cover] = field(default_factory=list, repr=False)

    def rows(self):
        """(n, b_n, len(P_n), dim Omega^n) for n = 0..cutoff."""
        return [(n, b, b * self.algebra_dim, self.syzygy_dims[n])
                for n, b in enumerate(self.betti)]

    def recurrence_holds(self) -> bool:
        return all(self.syzygy_dims[n + 1] == b * self.algebra_dim - self.syzygy_dims[n]
                   for n, b in enumerate(self.betti) if n + 1 < len(self.syzygy_dims))

    def to_csv(self) -> str:
        lines = ["n,b_n,len_Pn,dim_syzygy"]
        lines += [",".join(str(x) for x in row) for row in self.rows()]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "module": self.module_name,
            "algebra": self.algebra_name,
            "cutoff": self.cutoff,
            "rows": [{"n": n, "b_n": b, "len_Pn": lp, "dim_syzygy": s}
                     for n, b, lp, s in self.rows()],
        }


def minimal_resolution(m: ModuleRep, cutoff: int = DEFAULT_CUTOFF) -> ResolutionTable:
    """Covers P_0..P_N and syzygies Omega^0..Omega^(N+1) of m."""
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    a = m.algebra
    current = m
    syz, covers = [m], []
    for n in range(cutoff + 1):
        cover = projective_cover(current)
        covers.append(cover)
        current = syzygy_of_cover(cover, name=f"Omega^{n + 1}({m.name})")
        syz.append(current)
    table = ResolutionTable(m.name, a.name, cutoff, a.dim,
                            [c.rank for c in covers], [s.dim for s in syz[:cutoff + 1]],
                            syz, covers)
    return table


def extend(table: ResolutionTable, cutoff: int) -> ResolutionTable:
    """The same resolution continued to a larger cutoff."""
    if cutoff <= table.cutoff:
        return table
    a = table.syzygies[0].algebra
    syz, covers = list(table.syzygies), list(table.covers)
    current = syz[-1]
    for n in range(table.cutoff + 1, cutoff + 1):
        cover = projective_cover(current)
        covers.append(cover)
        current = syzygy_of_cover(cover, name=f"Omega^{n + 1}({table.module_name})")
        syz.append(current)
    return ResolutionTable(table.module_name, table.algebra_name, cutoff, a.dim,
                           [c.rank for c in covers], [s.dim for s in syz[:cutoff + 1]],
                           syz, covers)


@dataclass
class Periodicity:
    period: int | None
    dmax: int
    warnings: list[str] = field(default_factory=list)


def periodicity(table: ResolutionTable, dmax: int = DEFAULT_DMAX, seed: int = 0,
                trials: int = 64) -> Periodicity:
    """Smallest d <= dmax with Omega^d(M) isomorphic to M, from a computed resolution."""
    table = extend(table, dmax)
    m = table.syzygies[0]
    notes = []
    for d in range(1, dmax + 1):
        omega = table.syzygies[d]
        if omega.dim != m.dim:
            continue
        res = is_isomorphic(omega, m, seed=seed, trials=trials)
        if res.verdict == "Yes":
            return Periodicity(d, dmax, notes)
        if res.verdict == "Unknown":
            notes.append(f"d={d}: isomorphism test inconclusive ({res.reason})")
    for msg in notes:
        warnings.warn(msg)
    return Periodicity(None, dmax, notes)


def is_periodic(m: ModuleRep, dmax: int = DEFAULT_DMAX, seed: int = 0, trials: int = 64):
    """Period d <= dmax, or None."""
    return periodicity(minimal_resolution(m, dmax), dmax, seed, trials).period


def ext_dims(m: ModuleRep, cutoff: int = DEFAULT_CUTOFF) -> list[int]:
    """dim Ext^n(m, k) for n <= cutoff; equal to b_n over a local algebra."""
    return list(minimal_resolution(m, cutoff).betti)


# -- complexity -----------------------------------------------------------------

@dataclass
class ComplexityEstimate:
    c_hat: int
    certified_lower: int                 # exact: 1 when periodic, else 0
    evidence_lower: int | None           # 2 when non-periodic and strictly growing tail
    periodic: int | None
    diagnostics: dict

    def to_dict(self) -> dict:
        return {"c_hat": self.c_hat, "certified_lower": self.certified_lower,
                "evidence_lower": self.evidence_lower, "periodic": self.periodic,
                "diagnostics": self.diagnostics}


def _window(n_terms: int) -> list[int]:
    return [n for n in range(n_terms // 2, n_terms) if n >= 1]


def complexity_estimate(table: ResolutionTable, periodic: Periodicity | int | None = None
                        ) -> ComplexityEstimate:
    """Complexity read off a finite Betti table.

    The window is the last half of the table.  ``c`` passes when the ratios
    b_n / n^(c-1) over the second half of the window never exceed their
    maximum over the first half.
    """
    betti = list(table.betti)
    if table.cutoff < 8:
        raise TableTooShort(f"cutoff {table.cutoff} < 8")
    if isinstance(periodic, Periodicity):
        period, searched = periodic.period, periodic.dmax
    else:
        period, searched = periodic, None
    window = _window(len(betti))
    tail = [betti[n] for n in window]
    growing = all(b2 > b1 for b1, b2 in zip(tail, tail[1:]))
    diag: dict = {"window": [window[0], window[-1]], "strict_growth": growing, "ratios": {}}
    if 0 in betti:
        return ComplexityEstimate(0, 0, None, period,
                                  {**diag, "zero_at": betti.index(0)})
    half = len(window) // 2
    c_hat = None
    for c in range(1, 5):
        ratios = [Fraction(betti[n], n ** (c - 1)) for n in window]
        head, rest = ratios[:half] or ratios, ratios[half:]
        diag["ratios"][str(c)] = str(max(ratios))
        if c_hat is None and max(rest) <= max(head):
            c_hat = c
    if period is not None:
        c_hat = 1
    if c_hat is None:
        c_hat = 5
        diag["note"] = "no c <= 4 passes the window test"
    evidence = None
    if period is None and growing and searched is not None:
        evidence = 2
    return ComplexityEstimate(c_hat, 1 if period is not None else 0, evidence, period, diag)


def hilbert_growth(dims) -> tuple[int, int]:
    """(degree, degree + 1) from finite differences constant on the last half."""
    seq = [int(x) for x in dims]
    if len(seq) < 8:
        raise Unstable(f"need at least 8 terms, got {len(seq)}", {"sequence": seq})
    start = len(seq) // 2
    diffs = list(seq)
    history = {}
    for degree in range(len(seq) - 1):
        # diffs[i] is the degree-th difference ending at index i + degree
        window = [diffs[i] for i in range(len(diffs)) if i + degree >= start]
        history[degree] = window
        if len(window) >= 2 and len(set(window)) == 1:
            return degree, degree + 1
        if len(window) < 2:
            break
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    raise Unstable("finite differences did not stabilise", {"sequence": seq,
                                                            "windows": history})


# -- Carlson modules ------------------------------------------------------------

@dataclass
class Cocycle:
    """A homomorphism P_n -> k given by its values on the generators of P_n."""

    degree: int
    values: tuple[int, ...]

    def functional(self, table: ResolutionTable) -> np.ndarray:
        a = table.syzygies[0].algebra
        b = table.betti[self.degree]
        if len(self.values) != b:
            raise DimensionMismatch(f"cocycle has {len(self.values)} values, b_{self.degree} = {b}")
        eps = a.radical_data.augmentation
        return a.field.mul_table[np.asarray(self.values, dtype=np.int64)[:, None],
                                 eps[None, :]].reshape(-1)


def cocycle_condition(table: ResolutionTable, zeta: Cocycle) -> bool:
    phi = zeta.functional(table)
    ker = table.covers[zeta.degree].kernel
    if ker.size == 0:
        return True
    return not np.any(la.matmul(table.syzygies[0].field, phi.reshape(1, -1), ker))


def carlson_module(zeta: Cocycle, table: ResolutionTable | None = None, base: ModuleRep = None
                   ) -> ModuleRep:
    """L_zeta = kernel of the map Omega^n(k) -> k through which zeta factors."""
    if table is None:
        if base is None:
            raise ValueError("need a resolution table or a base algebra module")
        table = minimal_resolution(base, zeta.degree)
    if table.cutoff < zeta.degree:
        table = extend(table, zeta.degree)
    F = table.syzygies[0].field
    if not any(zeta.values):
        raise ZeroCocycle("zeta = 0")
    if not cocycle_condition(table, zeta):
        raise NotACocycle(f"zeta does not vanish on the image of d_{zeta.degree + 1}")
    cover = table.covers[zeta.degree]
    omega = table.syzygies[zeta.degree]
    phi = zeta.functional(table)
    # w . epi = phi, w a functional on Omega^n
    w = la.solve(F, cover.epi.T, phi)
    if w is None:
        raise NotACocycle("zeta does not factor through Omega^n")
    kernel = la.kernel_basis(F, w.reshape(1, -1))
    return restrict(omega, kernel, name=f"L_zeta(deg {zeta.degree})")


def cocycles(table: ResolutionTable, degree: int):
    """All nonzero cocycles of the given degree (values over the field)."""
    F = table.syzygies[0].field
    b = table.betti[degree]
    for vals in itertools.product(range(F.q), repeat=b):
        if any(vals):
            yield Cocycle(degree, tuple(vals))


def trivial_resolution(a, cutoff: int = DEFAULT_CUTOFF) -> ResolutionTable:
    return minimal_resolution(trivial_module(a), cutoff)
