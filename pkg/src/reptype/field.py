"""Finite fields F_{p^e}.

Elements are encoded as integers ``0 <= c < q``: the base-p digits of ``c``
are the coefficients (low to high) of the residue polynomial modulo the
defining polynomial.  Codes ``0..p-1`` are the prime-field elements, so an
F_p table can be read over any extension without re-encoding.

Arithmetic goes through precomputed ``q x q`` tables, which keeps matrix
routines vectorised for every field size this package deals with.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import InputError

# Conway polynomials, coefficients low-to-high, monic.
CONWAY: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (7, 4): (3, 4, 5, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_mod(out, m, p)


def is_irreducible(modulus, p: int) -> bool:
    """Rabin-style check: x^(p^e) = x mod f and no proper-degree factor."""
    m = list(modulus)
    e = len(m) - 1
    if e < 1 or m[-1] % p == 0:
        return False
    if e == 1:
        return True

    def frob_power(k):
        # x^(p^k) mod m
        r = [0, 1]
        for _ in range(k):
            base, acc, n = r, [1], p
            while n:
                if n & 1:
                    acc = _poly_mulmod(acc, base, m, p)
                base = _poly_mulmod(base, base, m, p)
                n >>= 1
            r = acc
        return r

    if frob_power(e) != _poly_mod([0, 1], m, p):
        return False
    for k in range(1, e):
        if e % k == 0:
            diff = frob_power(k)
            diff = diff + [0] * (2 - len(diff))
            diff[1] = (diff[1] - 1) % p
            while diff and diff[-1] == 0:
                diff.pop()
            # gcd(x^(p^k) - x, m) must be 1
            a, b = list(m), diff
            while b:
                a, b = b, _poly_mod(a, b, p)
            if len(a) > 1:
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^e} defined by a monic irreducible ``modulus``."""

    p: int
    e: int = 1
    modulus: tuple[int, ...] = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"characteristic {self.p} is not prime")
        if self.e < 1:
            raise InputError("extension degree must be >= 1")
        mod = tuple(int(c) % self.p for c in self.modulus)
        if not mod:
            if (self.p, self.e) not in CONWAY:
                raise InputError(
                    f"no bundled modulus for F_{self.p}^{self.e}; supply one")
            mod = CONWAY[(self.p, self.e)]
        if len(mod) != self.e + 1 or mod[-1] != 1:
            raise InputError(f"modulus {mod} is not monic of degree {self.e}")
        if not is_irreducible(mod, self.p):
            raise InputError(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def name(self) -> str:
        return f"F_{self.q}"

    def __repr__(self):
        return f"FieldSpec({self.name})"

    # -- encoding -----------------------------------------------------------
    def to_poly(self, c: int) -> tuple[int, ...]:
        return tuple(int(d) for d in self.digits[c])

    def from_poly(self, coeffs) -> int:
        coeffs = _poly_mod([int(x) for x in coeffs], list(self.modulus), self.p)
        return int(sum(int(x) * self.p ** i for i, x in enumerate(coeffs)))

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime field."""
        return int(n) % self.p

    def format(self, c: int) -> str:
        c = int(c)
        if c < self.p:
            return str(c)
        terms = []
        for i, d in enumerate(self.to_poly(c)):
            if d:
                mono = "1" if i == 0 else ("a" if i == 1 else f"a^{i}")
                terms.append(mono if d == 1 and i else (str(d) if i == 0 else f"{d}{mono}"))
        return "+".join(reversed(terms))

    def generator(self) -> int:
        """Class of x, a primitive element for the bundled Conway moduli."""
        return self.p if self.e > 1 else self._prime_root()

    def _prime_root(self) -> int:
        for g in range(1, self.p):
            if len({pow(g, k, self.p) for k in range(self.p - 1)}) == self.p - 1:
                return g
        return 1

    def elements(self) -> range:
        return range(self.q)

    def contains(self, other: "FieldSpec") -> bool:
        """True when ``other`` is the prime subfield or this very field."""
        return other.p == self.p and (other.e == 1 or other == self)

    # -- tables -------------------------------------------------------------
    @cached_property
    def digits(self) -> np.ndarray:
        codes = np.arange(self.q)
        return np.stack([(codes // self.p ** i) % self.p for i in range(self.e)], axis=1)

    @cached_property
    def _weights(self) -> np.ndarray:
        return self.p ** np.arange(self.e)

    @cached_property
    def add_table(self) -> np.ndarray:
        d = self.digits
        table = np.empty((self.q, self.q), dtype=np.int64)
        for a in range(self.q):
            table[a] = ((d[a] + d) % self.p) @ self._weights
        return table

    @cached_property
    def neg_table(self) -> np.ndarray:
        return (((-self.digits) % self.p) @ self._weights).astype(np.int64)

    @cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self.neg_table]

    @cached_property
    def mul_table(self) -> np.ndarray:
        p, e, q = self.p, self.e, self.q
        if e == 1:
            a = np.arange(q)
            return np.outer(a, a) % p
        d = self.digits
        table = np.empty((q, q), dtype=np.int64)
        for a in range(q):
            conv = np.zeros((q, 2 * e - 1), dtype=np.int64)
            for i in range(e):
                if d[a, i]:
                    conv[:, i:i + e] += d[a, i] * d
            table[a] = self._reduce_coeffs(conv % p)
        return table

    def _reduce_coeffs(self, conv: np.ndarray) -> np.ndarray:
        """Reduce coefficient arrays (..., k) modulo the modulus; return codes."""
        p, e = self.p, self.e
        conv = conv.copy()
        mod = np.array(self.modulus[:-1], dtype=np.int64)
        for t in range(conv.shape[-1] - 1, e - 1, -1):
            c = conv[..., t]
            conv[..., t - e:t] = (conv[..., t - e:t] - c[..., None] * mod) % p
            conv[..., t] = 0
        return (conv[..., :e] % p) @ self._weights

    @cached_property
    def inv_table(self) -> np.ndarray:
        inv = np.zeros(self.q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 1)
        inv[rows] = cols
        return inv

    @cached_property
    def mult_matrices(self) -> np.ndarray:
        """(q, e, e) F_p-matrices of multiplication by each element."""
        basis = [self.p ** i for i in range(self.e)]
        out = np.zeros((self.q, self.e, self.e), dtype=np.int64)
        for j, b in enumerate(basis):
            out[:, :, j] = self.digits[self.mul_table[:, b]]
        return out

    # -- scalar helpers -----------------------------------------------------
    def add(self, a, b):
        return int(self.add_table[a, b])

    def sub(self, a, b):
        return int(self.sub_table[a, b])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def neg(self, a):
        return int(self.neg_table[a])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.inv_table[a])

    def power(self, a: int, n: int) -> int:
        r = 1
        for _ in range(n):
            r = self.mul(r, a)
        return r


def prime_field(p: int) -> FieldSpec:
    return FieldSpec(p, 1)


def parse_field(text: str) -> FieldSpec:
    """Parse ``"p"`` or ``"p,e"``."""
    try:
        parts = [int(x) for x in str(text).split(",")]
    except ValueError as exc:
        raise InputError(f"bad field spec {text!r}; expected p[,e]") from exc
    if len(parts) == 1:
        return FieldSpec(parts[0], 1)
    if len(parts) == 2:
        return FieldSpec(parts[0], parts[1])
    raise InputError(f"bad field spec {text!r}; expected p[,e]")
