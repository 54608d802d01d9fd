"""Noncommutative polynomials and degree-bounded completion.

A polynomial is a dict ``{word: coeff}`` where a word is a tuple of
generator indices and coefficients are field codes.  Words are ordered
deg-lex (length first, then lexicographically by generator index), so the
leading word of an element is its longest, lexicographically largest word.
"""
from __future__ import annotations

import heapq
import re
from itertools import count

from .errors import InconsistentRelations, InputError
from .field import FieldSpec

Word = tuple[int, ...]
Poly = dict


def word_key(w: Word):
    return (len(w), w)


def leading_word(f: Poly) -> Word:
    return max(f, key=word_key)


def clean(f: Poly) -> Poly:
    return {w: c for w, c in f.items() if c}


def poly_add(F: FieldSpec, f: Poly, g: Poly, scale: int = 1) -> Poly:
    """f + scale * g."""
    out = dict(f)
    for w, c in g.items():
        v = F.add(out.get(w, 0), F.mul(scale, c))
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


def poly_mul(F: FieldSpec, f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for u, a in f.items():
        for v, b in g.items():
            w = u + v
            out[w] = F.add(out.get(w, 0), F.mul(a, b))
    return clean(out)


def poly_scale(F: FieldSpec, f: Poly, c: int) -> Poly:
    return clean({w: F.mul(c, a) for w, a in f.items()})


def poly_pow(F: FieldSpec, f: Poly, n: int) -> Poly:
    out: Poly = {(): 1}
    for _ in range(n):
        out = poly_mul(F, out, f)
    return out


def commutator(F: FieldSpec, f: Poly, g: Poly) -> Poly:
    return poly_add(F, poly_mul(F, f, g), poly_mul(F, g, f), F.neg(1))


def monic(F: FieldSpec, f: Poly) -> Poly:
    lead = f[leading_word(f)]
    return poly_scale(F, f, F.inv(lead)) if lead != 1 else dict(f)


def format_poly(F: FieldSpec, f: Poly, names) -> str:
    if not f:
        return "0"
    parts = []
    for w in sorted(f, key=word_key, reverse=True):
        c = f[w]
        mono = "".join(names[i] for i in w) or "1"
        coeff = F.format(c)
        if w and c == 1:
            parts.append(mono)
        elif w:
            parts.append(f"({coeff}){mono}" if "+" in coeff else f"{coeff}{mono}")
        else:
            parts.append(coeff)
    return " + ".join(parts)


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    """Recursive-descent parser for expressions like ``xyxy - yxyx`` or
    ``(xy-yx)^3``.  Juxtaposition is multiplication; identifiers are split
    greedily into generator names."""

    def __init__(self, F: FieldSpec, names, text: str):
        self.F = F
        self.names = sorted(names, key=len, reverse=True)
        self.index = {n: i for i, n in enumerate(names)}
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        tokens = []
        for m in _TOKEN.finditer(text):
            num, ident, other = m.groups()
            if num is not None:
                tokens.append(("num", int(num)))
            elif ident is not None:
                tokens.extend(("gen", g) for g in self._split_ident(ident))
            elif other is not None and other.strip():
                tokens.append(("op", other))
        return tokens

    def _split_ident(self, ident):
        out, rest = [], ident
        while rest:
            for n in self.names:
                if rest.startswith(n):
                    out.append(self.index[n])
                    rest = rest[len(n):]
                    break
            else:
                raise InputError(f"unknown generator in {ident!r} (expression {self.text!r})")
        return out

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        f = self.expr()
        if self.pos != len(self.tokens):
            raise InputError(f"trailing input in {self.text!r} at token {self.peek()[1]!r}")
        return f

    def expr(self) -> Poly:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        f = self.term()
        if sign < 0:
            f = poly_scale(self.F, f, self.F.neg(1))
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = poly_add(self.F, f, g, 1 if op == "+" else self.F.neg(1))
        return f

    def term(self) -> Poly:
        f: Poly = {(): 1}
        seen = False
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                continue
            if kind in ("num", "gen") or (kind == "op" and val == "("):
                f = poly_mul(self.F, f, self.power())
                seen = True
            else:
                break
        if not seen:
            raise InputError(f"expected a term in {self.text!r}")
        return f

    def power(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            base = clean({(): self.F.from_int(val)})
        elif kind == "gen":
            base = {(val,): 1}
        else:
            base = self.expr()
            if self.take() != ("op", ")"):
                raise InputError(f"unbalanced parentheses in {self.text!r}")
        if self.peek() == ("op", "^"):
            self.take()
            kind, n = self.take()
            if kind != "num":
                raise InputError(f"exponent must be an integer in {self.text!r}")
            base = poly_pow(self.F, base, n)
        return base


def parse_poly(F: FieldSpec, names, text: str) -> Poly:
    return _Parser(F, list(names), text).parse()


# -- completion ---------------------------------------------------------------

def _find_subword(w: Word, patterns: dict):
    """First (start, pattern) such that pattern occurs in w at start."""
    n = len(w)
    for i in range(n):
        for j in range(i, n + 1):
            if w[i:j] in patterns:
                return i, w[i:j]
    return None


class Rewriter:
    """Reduction modulo a set of monic polynomials with distinct leading words."""

    def __init__(self, F: FieldSpec):
        self.F = F
        self.rules: dict[Word, Poly] = {}

    def reducible(self, w: Word) -> bool:
        return _find_subword(w, self.rules) is not None

    def reduce(self, f: Poly) -> Poly:
        F = self.F
        f = dict(f)
        done: Poly = {}
        while f:
            w = max(f, key=word_key)
            c = f.pop(w)
            hit = _find_subword(w, self.rules)
            if hit is None:
                done[w] = c
                continue
            i, lw = hit
            a, b = w[:i], w[i + len(lw):]
            neg_c = F.neg(c)
            for u, d in self.rules[lw].items():
                if u == lw:
                    continue
                v = a + u + b
                val = F.add(f.get(v, 0), F.mul(neg_c, d))
                if val:
                    f[v] = val
                else:
                    f.pop(v, None)
        return done


def _overlaps(u: Word, v: Word):
    """Ways the leading words u, v combine: (a, b, c, d) with a+u+b == c+v+d."""
    out = []
    # suffix of u equals prefix of v
    for k in range(1, min(len(u), len(v))):
        if u[-k:] == v[:k]:
            out.append(((), v[k:], u[:-k], ()))
    # v inside u
    if len(v) <= len(u):
        for i in range(len(u) - len(v) + 1):
            if u[i:i + len(v)] == v and (len(v) < len(u)):
                out.append(((), (), u[:i], u[i + len(v):]))
    return out


def complete(F: FieldSpec, relations, degree_bound: int) -> Rewriter:
    """Buchberger-style completion, skipping overlaps longer than the bound.

    The resulting rule set is a (possibly truncated) Groebner basis; callers
    must validate the table they build from it.
    """
    rw = Rewriter(F)
    heap: list = []
    tick = count()

    def push(f):
        if f:
            heapq.heappush(heap, (word_key(leading_word(f)), next(tick), f))

    for r in relations:
        push(clean(dict(r)))
    while heap:
        _, _, f = heapq.heappop(heap)
        f = rw.reduce(f)
        if not f:
            continue
        f = monic(F, f)
        lw = leading_word(f)
        if lw == ():
            raise InconsistentRelations("the relations generate the unit ideal")
        # rules whose leading word contains lw are superseded; re-queue them
        for old in [w for w in rw.rules if _find_subword(w, {lw: None}) is not None]:
            push(rw.rules.pop(old))
        rw.rules[lw] = f
        for other, g in list(rw.rules.items()):
            pairs = [(f, g, lw, other)] + ([(g, f, other, lw)] if other != lw else [])
            for f1, f2, u, v in pairs:
                for a, b, c, d in _overlaps(u, v):
                    if len(a) + len(u) + len(b) > degree_bound:
                        continue
                    s = poly_add(F, poly_mul(F, poly_mul(F, {a: 1}, f1), {b: 1}),
                                 poly_mul(F, poly_mul(F, {c: 1}, f2), {d: 1}), F.neg(1))
                    push(s)
    # final interreduction of tails
    for lw in list(rw.rules):
        f = rw.rules.pop(lw)
        tail = {w: c for w, c in f.items() if w != lw}
        tail = rw.reduce(tail)
        tail[lw] = 1
        rw.rules[lw] = tail
    return rw


def normal_words(rw: Rewriter, ngens: int, degree_bound: int) -> tuple[list[Word], bool]:
    """Words avoiding every leading word, in deg-lex order.

    Returns (words, closed); closed is False when normal words of length
    ``degree_bound`` still exist, i.e. the dimension did not stabilise.
    """
    level = [()]
    words = [()]
    for length in range(1, degree_bound + 1):
        nxt = []
        for w in level:
            for g in range(ngens):
                cand = w + (g,)
                # only suffixes ending at the new letter can be new matches
                if any(cand[i:] in rw.rules for i in range(len(cand))):
                    continue
                nxt.append(cand)
        if not nxt:
            return sorted(words, key=word_key), True
        words.extend(nxt)
        level = nxt
    return sorted(words, key=word_key), False
