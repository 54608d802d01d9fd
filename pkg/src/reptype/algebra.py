"""Finite-dimensional algebras given by structure constants.

Every basis element carries a word in the distinguished generators whose
product equals it; modules only store generator actions and recover the
action of a basis element by multiplying along its word.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg as la
from . import noncomm as nc
from .errors import InputError, NonTerminating, NotAGroup, UnsupportedClass
from .field import FieldSpec


@dataclass(frozen=True)
class Presentation:
    """Generators and relations, k<gens>/(relations), plus central elements."""

    field: FieldSpec
    generators: tuple[str, ...]
    relations: tuple = ()
    degree_bound: int = 8
    central: tuple = ()
    name: str = ""

    def __post_init__(self):
        n = len(self.generators)
        if n == 0:
            raise InputError("a presentation needs at least one generator")
        if len(set(self.generators)) != n:
            raise InputError("generator names must be distinct")
        rels = tuple(self._coerce(r) for r in self.relations)
        cent = tuple(self._coerce(z) for z in self.central)
        for f in rels + cent:
            for w in f:
                if any(not 0 <= i < n for i in w):
                    raise InputError(f"relation word {w} uses an unknown generator")
        longest = max((len(w) for f in rels for w in f), default=0)
        if self.degree_bound < longest:
            raise InputError(
                f"degree bound {self.degree_bound} is below the longest relation word ({longest})")
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "central", cent)
        object.__setattr__(self, "generators", tuple(self.generators))

    def _coerce(self, r):
        if isinstance(r, str):
            return nc.parse_poly(self.field, self.generators, r)
        return nc.clean({tuple(w): int(c) % self.field.q for w, c in dict(r).items()})

    def expanded_relations(self) -> tuple:
        """Relations with each central element z replaced by [z, g] for all g."""
        out = list(self.relations)
        for z in self.central:
            for g in range(len(self.generators)):
                out.append(nc.commutator(self.field, z, {(g,): 1}))
        return tuple(f for f in out if f)

    def over(self, F: FieldSpec) -> "Presentation":
        if not F.contains(self.field):
            raise InputError(f"{F.name} does not contain {self.field.name}")
        return Presentation(F, self.generators, self.relations, self.degree_bound,
                            self.central, self.name)


@dataclass(frozen=True)
class RadicalData:
    basis: np.ndarray          # rows spanning rad(A)
    augmentation: np.ndarray   # the algebra map A -> F with kernel rad(A)
    generators: np.ndarray     # x - eps(x) for each algebra generator
    loewy_length: int
    kind: str


@dataclass(frozen=True, eq=False)
class AlgebraTable:
    field: FieldSpec
    generators: tuple[str, ...]
    words: tuple[tuple[int, ...], ...]
    structure: np.ndarray
    unit: np.ndarray
    gen_vectors: np.ndarray
    kind: str = "table"
    relations: tuple = ()
    group_order: int | None = None
    name: str = ""
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(
                "".join(self.generators[i] for i in w) or "1" for w in self.words))

    @property
    def dim(self) -> int:
        return len(self.words)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        return f"AlgebraTable({self.name or '?'}, dim={self.dim}, over {self.field.name})"

    # -- arithmetic -----------------------------------------------------------
    def mul_many(self, u, v) -> np.ndarray:
        """Row-wise products of two (n, d) stacks of vectors."""
        F, d = self.field, self.dim
        u, v = la.asmat(u), la.asmat(v)
        outer = F.mul_table[u[:, :, None], v[:, None, :]].reshape(u.shape[0], d * d)
        return la.matmul(F, outer, self.structure.reshape(d * d, d))

    def mul(self, u, v) -> np.ndarray:
        return self.mul_many(u, v)[0]

    def left_matrix(self, a) -> np.ndarray:
        """Matrix of x -> a x (columns indexed by basis)."""
        d = self.dim
        m = la.matmul(self.field, la.asmat(a), self.structure.reshape(d, d * d))
        return m.reshape(d, d).T.copy()

    def right_matrix(self, a) -> np.ndarray:
        """Matrix of x -> x a."""
        d = self.dim
        t = self.structure.transpose(1, 0, 2).reshape(d, d * d)
        return la.matmul(self.field, la.asmat(a), t).reshape(d, d).T.copy()

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def word_vector(self, word) -> np.ndarray:
        v = self.unit.copy()
        for g in reversed(tuple(word)):
            v = self.mul(self.gen_vectors[g], v)
        return v

    def evaluate(self, poly) -> np.ndarray:
        F = self.field
        out = np.zeros(self.dim, dtype=np.int64)
        for w, c in poly.items():
            out = la.add(F, out, la.scale(F, c, self.word_vector(w)))
        return out

    def element(self, text: str) -> np.ndarray:
        """Parse an expression in the generators, e.g. ``"xy-yx"``."""
        return self.evaluate(nc.parse_poly(self.field, self.generators, text))

    @cached_property
    def gen_left_matrices(self) -> np.ndarray:
        return np.stack([self.left_matrix(g) for g in self.gen_vectors]) if self.ngens else \
            np.zeros((0, self.dim, self.dim), dtype=np.int64)

    @cached_property
    def unit_index(self) -> int:
        return self.words.index(())

    def base_change(self, F: FieldSpec) -> "AlgebraTable":
        if F == self.field:
            return self
        if not F.contains(self.field):
            raise InputError(f"{F.name} does not contain {self.field.name}")
        return AlgebraTable(F, self.generators, self.words, self.structure, self.unit,
                            self.gen_vectors, self.kind, self.relations, self.group_order,
                            self.name, self.labels)

    # -- validation -----------------------------------------------------------
    def check_associative(self) -> bool:
        F, d = self.field, self.dim
        if d == 0:
            return True
        c = self.structure
        left = la.matmul(F, c.reshape(d * d, d), c.reshape(d, d * d)).reshape(d, d, d, d)
        right = la.matmul(F, c.reshape(d * d, d), c.transpose(1, 0, 2).reshape(d, d * d))
        right = right.reshape(d, d, d, d).transpose(2, 0, 1, 3)
        return bool(np.array_equal(left, right))

    def check_unit(self) -> bool:
        d = self.dim
        if d == 0:
            return True
        eye = la.identity(d)
        return (np.array_equal(self.left_matrix(self.unit), eye)
                and np.array_equal(self.right_matrix(self.unit), eye))

    def check_words(self) -> bool:
        return all(np.array_equal(self.word_vector(w), self.basis_vector(i))
                   for i, w in enumerate(self.words))

    def check_relations(self) -> bool:
        return all(not np.any(self.evaluate(r)) for r in self.relations)

    def validate(self) -> list[str]:
        problems = []
        if not self.check_unit():
            problems.append("unit is not a two-sided identity")
        if not self.check_associative():
            problems.append("multiplication is not associative")
        if not self.check_words():
            problems.append("basis words do not multiply out to the basis")
        if not self.check_relations():
            problems.append("a defining relation does not vanish")
        return problems

    # -- hashing --------------------------------------------------------------
    def content_hash(self) -> str:
        return self._content_hash

    @cached_property
    def _content_hash(self) -> str:
        payload = {
            "field": [self.field.p, self.field.e, list(self.field.modulus)],
            "generators": list(self.generators),
            "words": [list(w) for w in self.words],
            "structure": self.structure.reshape(-1).tolist(),
            "gen_vectors": self.gen_vectors.reshape(-1).tolist(),
        }
        blob = json.dumps(payload, separators=(",", ":"), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    @cached_property
    def radical_data(self) -> RadicalData:
        return _compute_radical(self)


# -- construction from presentations -------------------------------------------

def close_presentation(pres: Presentation) -> AlgebraTable:
    """Finite-dimensional algebra k<gens>/(relations) with a normal-word basis."""
    F, L = pres.field, pres.degree_bound
    rels = pres.expanded_relations()
    rw = nc.complete(F, rels, L)
    words, closed = nc.normal_words(rw, len(pres.generators), L)
    if not closed:
        raise NonTerminating(
            f"{pres.name or 'presentation'}: normal words of length {L} remain; "
            f"dimension did not stabilise below the degree bound")
    index = {w: i for i, w in enumerate(words)}
    d = len(words)
    struct = np.zeros((d, d, d), dtype=np.int64)
    for i, u in enumerate(words):
        for j, v in enumerate(words):
            for w, c in rw.reduce({u + v: 1}).items():
                struct[i, j, index[w]] = c
    gen_vectors = np.zeros((len(pres.generators), d), dtype=np.int64)
    for g in range(len(pres.generators)):
        for w, c in rw.reduce({(g,): 1}).items():
            gen_vectors[g, index[w]] = c
    unit = np.zeros(d, dtype=np.int64)
    unit[index[()]] = 1
    alg = AlgebraTable(F, pres.generators, tuple(words), struct, unit, gen_vectors,
                       kind="presentation", relations=rels, name=pres.name)
    problems = alg.validate()
    if problems:
        raise NonTerminating(
            f"{pres.name or 'presentation'}: truncated completion at degree {L} is not "
            f"confluent ({'; '.join(problems)}); raise the degree bound")
    return alg


# -- group algebras --------------------------------------------------------------

def _check_group(table: np.ndarray) -> int:
    n = table.shape[0]
    if table.shape != (n, n) or table.min() < 0 or table.max() >= n:
        raise NotAGroup("multiplication table must be n x n with entries in range(n)")
    ids = [e for e in range(n) if np.array_equal(table[e], np.arange(n))
           and np.array_equal(table[:, e], np.arange(n))]
    if not ids:
        raise NotAGroup("no identity element")
    # (ab)c == a(bc)
    a = np.arange(n)
    lhs = table[table[a[:, None, None], a[None, :, None]], a[None, None, :]]
    rhs = table[a[:, None, None], table[a[None, :, None], a[None, None, :]]]
    if not np.array_equal(lhs, rhs):
        raise NotAGroup("multiplication is not associative")
    e = ids[0]
    if not all((table[g] == e).any() for g in range(n)):
        raise NotAGroup("some element has no inverse")
    return e


def _generating_set(table: np.ndarray, e: int) -> list[int]:
    n = table.shape[0]
    gens: list[int] = []
    span = {e}
    for g in range(n):
        if g in span:
            continue
        gens.append(g)
        frontier = list(span)
        span = set(span)
        while frontier:
            h = frontier.pop()
            for s in gens:
                for k in (table[s, h], table[h, s]):
                    if k not in span:
                        span.add(int(k))
                        frontier.append(int(k))
        if len(span) == n:
            break
    return gens


def group_algebra(mult_table, F: FieldSpec, generators=None, names=None,
                  name: str = "") -> AlgebraTable:
    """Group algebra F[G] from a multiplication table (``table[g][h] = gh``)."""
    table = np.asarray(mult_table, dtype=np.int64)
    e = _check_group(table)
    n = table.shape[0]
    gens = list(generators) if generators is not None else _generating_set(table, e)
    names = tuple(names) if names else tuple(f"g{i + 1}" for i in range(len(gens)))
    # words by breadth-first left multiplication: word(s h) = (s,) + word(h)
    words: dict[int, tuple] = {e: ()}
    level = [e]
    while level:
        nxt = []
        for h in level:
            for si, s in enumerate(gens):
                g = int(table[s, h])
                if g not in words:
                    words[g] = (si,) + words[h]
                    nxt.append(g)
        level = nxt
    if len(words) != n:
        raise NotAGroup("chosen elements do not generate the group")
    struct = np.zeros((n, n, n), dtype=np.int64)
    i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    struct[i, j, table] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[e] = 1
    gen_vectors = np.zeros((len(gens), n), dtype=np.int64)
    gen_vectors[np.arange(len(gens)), gens] = 1
    labels = tuple("e" if g == e else "*".join(names[k] for k in words[g]) for g in range(n))
    alg = AlgebraTable(F, names, tuple(words[g] for g in range(n)), struct, unit, gen_vectors,
                       kind="group", group_order=n, name=name, labels=labels)
    problems = alg.validate()
    if problems:
        raise NotAGroup("; ".join(problems))
    return alg


def dihedral_table(n: int) -> np.ndarray:
    """Dihedral group of order 2n: element r^i s^j stored at index i + n*j."""
    size = 2 * n
    table = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        i1, j1 = a % n, a // n
        for b in range(size):
            i2, j2 = b % n, b // n
            # r^i1 s^j1 r^i2 s^j2 = r^(i1 + (-1)^j1 i2) s^(j1+j2)
            i = (i1 + (i2 if j1 == 0 else -i2)) % n
            table[a, b] = i + n * ((j1 + j2) % 2)
    return table


def abelian_table(*orders: int) -> np.ndarray:
    """Direct product of cyclic groups, mixed-radix indexing."""
    shape = tuple(orders)
    size = int(np.prod(shape)) if shape else 1
    coords = np.array(np.unravel_index(np.arange(size), shape)).T if shape else np.zeros((1, 0))
    table = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        s = (coords[a] + coords) % np.array(shape)
        table[a] = np.ravel_multi_index(s.T, shape)
    return table


# -- radical -------------------------------------------------------------------

def _single_eigenvalue(F: FieldSpec, m: np.ndarray):
    n = m.shape[0]
    for c in F.elements():
        shifted = la.sub(F, m, la.scale(F, c, la.identity(n)))
        if not np.any(la.matpow(F, shifted, n)):
            return int(c)
    return None


def _compute_radical(a: AlgebraTable) -> RadicalData:
    F, d = a.field, a.dim
    if d == 0:
        raise UnsupportedClass("zero algebra has no radical data")
    eps_gens = []
    for g in range(a.ngens):
        c = _single_eigenvalue(F, a.gen_left_matrices[g])
        if c is None:
            raise UnsupportedClass(
                f"{a.name or 'algebra'}: generator {a.generators[g]} is not of the form "
                f"scalar + nilpotent; only local algebras are supported")
        eps_gens.append(c)
    eps = np.zeros(d, dtype=np.int64)
    for i, w in enumerate(a.words):
        v = 1
        for g in w:
            v = F.mul(v, eps_gens[g])
        eps[i] = v
    # eps must be multiplicative on the structure constants
    prods = la.matmul(F, a.structure.reshape(d * d, d), eps.reshape(d, 1)).reshape(d, d)
    if not np.array_equal(prods, F.mul_table[eps[:, None], eps[None, :]]):
        raise UnsupportedClass(f"{a.name or 'algebra'}: no augmentation; algebra is not local")
    rad = la.kernel_basis(F, eps.reshape(1, d)).T
    rad_gens = np.stack([la.sub(F, a.gen_vectors[g], la.scale(F, eps_gens[g], a.unit))
                         for g in range(a.ngens)]) if a.ngens else la.zeros(0, d)
    # nilpotency: rad^k = 0 for some k <= d
    power, k = rad, 1
    while power.shape[0]:
        if k > d:
            raise UnsupportedClass("augmentation ideal is not nilpotent")
        u = np.repeat(power, rad.shape[0], axis=0)
        v = np.tile(rad, (power.shape[0], 1))
        power = la.row_space(F, a.mul_many(u, v)) if u.shape[0] else la.zeros(0, d)
        k += 1
    if a.kind == "group":
        kind = "p-group"
    elif not any(eps_gens):
        kind = "local-augmented"
    else:
        kind = "local"
    return RadicalData(rad, eps, rad_gens, k, kind)


def radical(a: AlgebraTable) -> np.ndarray:
    """Basis (rows) of the Jacobson radical, for local algebras."""
    return a.radical_data.basis


def augmentation(a: AlgebraTable) -> np.ndarray:
    return a.radical_data.augmentation


# -- subquotients by words -------------------------------------------------------

def word_basis(a: AlgebraTable, gen_vectors, ideal: la.Subspace | None = None):
    """Greedy deg-lex basis of A/ideal made of words in ``gen_vectors``.

    Returns (words, vectors): vectors are representatives in A.  A word
    that depends on smaller words has only dependent extensions, so only
    selected words are extended.
    """
    F, d = a.field, a.dim
    ideal = ideal or la.Subspace(F, la.zeros(0, d), d)
    gen_vectors = la.asmat(gen_vectors) if len(gen_vectors) else la.zeros(0, d)
    words, vectors, reduced = [], [], []

    def independent(r):
        if not np.any(r):
            return False
        if not reduced:
            return True
        return la.rank(F, np.vstack(reduced + [r])) > len(reduced)

    r0 = ideal.reduce(a.unit)
    if not independent(r0):
        return [], la.zeros(0, d)
    words.append(())
    vectors.append(a.unit)
    reduced.append(r0)
    level = [((), a.unit)]
    while level:
        nxt = []
        for w, vec in level:
            for s in range(gen_vectors.shape[0]):
                v = a.mul(vec, gen_vectors[s])
                r = ideal.reduce(v)
                if independent(r):
                    words.append(w + (s,))
                    vectors.append(v)
                    reduced.append(r)
                    nxt.append((w + (s,), v))
        level = nxt
    return words, np.stack(vectors)


def _rebuild(a: AlgebraTable, names, gen_vectors, ideal: la.Subspace, kind, name,
             relations=()) -> AlgebraTable:
    F, d = a.field, a.dim
    words, vecs = word_basis(a, gen_vectors, ideal)
    k = len(words)
    if k == 0:
        return AlgebraTable(F, tuple(names), (), np.zeros((0, 0, 0), dtype=np.int64),
                            np.zeros(0, dtype=np.int64), la.zeros(len(names), 0), kind=kind,
                            name=name)
    if k + ideal.dim != d:
        raise InputError("elements do not generate the algebra")
    change = la.inverse(F, np.vstack([vecs, ideal.basis]) if ideal.dim else vecs)

    def coords(rows):
        return la.matmul(F, la.asmat(rows), change)[:, :k]

    u = np.repeat(vecs, k, axis=0)
    v = np.tile(vecs, (k, 1))
    struct = coords(a.mul_many(u, v)).reshape(k, k, k)
    gens = coords(gen_vectors) if len(gen_vectors) else la.zeros(0, k)
    unit = np.zeros(k, dtype=np.int64)
    unit[0] = 1
    out = AlgebraTable(F, tuple(names), tuple(words), struct, unit, gens, kind=kind,
                       relations=relations, name=name)
    problems = out.validate()
    if problems:
        raise InputError("; ".join(problems))
    return out


def ideal_closure(a: AlgebraTable, gens) -> la.Subspace:
    """Two-sided ideal generated by ``gens``: span of u g v over basis u, v.

    Each generator is a coefficient vector or an expression such as "xy-yx".
    """
    F, d = a.field, a.dim
    gens = [a.element(g) if isinstance(g, str) else g for g in gens]
    gens = la.asmat(gens) if len(gens) else la.zeros(0, d)
    eye = la.identity(d)
    pieces = []
    for g in gens:
        left = a.mul_many(eye, np.tile(g, (d, 1)))
        u = np.repeat(left, d, axis=0)
        v = np.tile(eye, (d, 1))
        pieces.append(a.mul_many(u, v))
    if not pieces:
        return la.Subspace(F, la.zeros(0, d), d)
    return la.Subspace(F, np.vstack(pieces), d)


def quotient_by_ideal(a: AlgebraTable, gens, name: str = "") -> AlgebraTable:
    """Factor algebra A/(gens); a zero algebra (flagged by ``is_zero``) if 1 is in the ideal."""
    ideal = ideal_closure(a, gens)
    rels = a.relations if a.kind in ("presentation", "quotient") else ()
    return _rebuild(a, a.generators, a.gen_vectors, ideal, "quotient",
                    name or f"{a.name}/ideal", relations=rels)


def canonical_form(a: AlgebraTable) -> AlgebraTable:
    """The algebra rebased on greedy deg-lex words in its own generators.

    Two algebras whose generators correspond have equal canonical forms
    exactly when the correspondence extends to an isomorphism.
    """
    F = a.field
    return _rebuild(a, a.generators, a.gen_vectors, la.Subspace(F, la.zeros(0, a.dim), a.dim),
                    "canonical", a.name)


def canonical_key(a: AlgebraTable) -> str:
    c = canonical_form(a)
    payload = {
        "field": [c.field.p, c.field.e, list(c.field.modulus)],
        "ngens": c.ngens,
        "words": [list(w) for w in c.words],
        "structure": c.structure.reshape(-1).tolist(),
    }
    return hashlib.sha256(json.dumps(payload, separators=(",", ":")).encode()).hexdigest()


def change_generators(a: AlgebraTable, new_gens, names=None, name: str = "") -> AlgebraTable:
    """Same algebra presented by new generating elements (given as vectors or strings)."""
    vecs = np.stack([a.element(g) if isinstance(g, str) else np.asarray(g, dtype=np.int64)
                     for g in new_gens])
    names = tuple(names) if names else a.generators[:len(vecs)]
    return _rebuild(a, names, vecs, la.Subspace(a.field, la.zeros(0, a.dim), a.dim),
                    "rebased", name or a.name)


def satisfies(a: AlgebraTable, pres: Presentation, gen_vectors=None) -> bool:
    """Whether the given elements (default: the generators) satisfy pres's relations."""
    gen_vectors = a.gen_vectors if gen_vectors is None else la.asmat(gen_vectors)
    F = a.field

    def word_vec(w):
        v = a.unit.copy()
        for g in reversed(w):
            v = a.mul(gen_vectors[g], v)
        return v

    for r in pres.expanded_relations():
        total = np.zeros(a.dim, dtype=np.int64)
        for w, c in r.items():
            total = la.add(F, total, la.scale(F, c, word_vec(w)))
        if np.any(total):
            return False
    return True


def regular_module(a: AlgebraTable):
    """Left regular representation."""
    from .module import ModuleRep
    return ModuleRep(a, tuple(a.gen_left_matrices), name=f"A({a.name})")
