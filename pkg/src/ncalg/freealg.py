"""Polynomials in noncommuting variables x1, x2, ... with field coefficients."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (ArityMismatch, BudgetExceeded, DomainMismatch, NotMultilinear,
                     PolySyntaxError, UnknownVariable)
from .matcore import Matrix
from .scalars import QQ, PrimeField, Rational, Scalar, ScalarDomain

MAX_STANDARD_DEGREE = 7


def _word_key(w: tuple) -> tuple:
    return (len(w), w)


@dataclass(frozen=True)
class FreePoly:
    """Canonical form: nonzero coefficients, distinct words, sorted by (length, lex)."""

    domain: ScalarDomain
    terms: tuple  # ((coeff, word), ...), word a tuple of 1-based variable indices

    @classmethod
    def from_terms(cls, domain: ScalarDomain, pairs: Iterable) -> "FreePoly":
        acc: dict[tuple, object] = {}
        for c, w in pairs:
            w = tuple(w)
            acc[w] = domain.add(acc[w], c) if w in acc else domain.coerce(c)
        items = sorted(((c, w) for w, c in acc.items() if not domain.is_zero(c)),
                       key=lambda t: _word_key(t[1]))
        return cls(domain, tuple(items))

    @classmethod
    def zero(cls, domain: ScalarDomain = QQ) -> "FreePoly":
        return cls(domain, ())

    @classmethod
    def var(cls, k: int, domain: ScalarDomain = QQ) -> "FreePoly":
        return cls(domain, ((domain.one(), (k,)),))

    @property
    def nvars(self) -> int:
        return max((max(w) for _, w in self.terms if w), default=0)

    @property
    def degree(self) -> int:
        return max((len(w) for _, w in self.terms), default=0)

    def coefficient(self, word: Sequence[int]):
        w = tuple(word)
        for c, v in self.terms:
            if v == w:
                return c
        return self.domain.zero()

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other: "FreePoly") -> None:
        if other.domain != self.domain:
            raise DomainMismatch(f"{self.domain} vs {other.domain}")

    def __add__(self, other: "FreePoly") -> "FreePoly":
        self._same(other)
        return FreePoly.from_terms(self.domain, self.terms + other.terms)

    def __neg__(self) -> "FreePoly":
        d = self.domain
        return FreePoly(d, tuple((d.neg(c), w) for c, w in self.terms))

    def __sub__(self, other: "FreePoly") -> "FreePoly":
        return self + (-other)

    def __mul__(self, other: "FreePoly") -> "FreePoly":
        self._same(other)
        d = self.domain
        return FreePoly.from_terms(d, ((d.mul(a, b), v + w)
                                       for a, v in self.terms for b, w in other.terms))

    def scale(self, c) -> "FreePoly":
        d = self.domain
        c = d.coerce(c.value if isinstance(c, Scalar) else c)
        return FreePoly.from_terms(d, ((d.mul(c, a), w) for a, w in self.terms))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"FreePoly({self})"


# printing ---------------------------------------------------------------

def _format_word(w: tuple) -> str:
    parts = []
    for v, grp in itertools.groupby(w):
        k = len(list(grp))
        parts.append(f"x{v}" if k == 1 else f"x{v}^{k}")
    return "*".join(parts)


def format_poly(f: FreePoly) -> str:
    if not f.terms:
        return "0"
    d = f.domain
    out = []
    for idx, (c, w) in enumerate(f.terms):
        neg = False
        if isinstance(d, Rational) and c < 0:
            neg, c = True, -c
        cs = d.format(c)
        if not w:
            body = cs
        elif d.eq(c, d.one()):
            body = _format_word(w)
        else:
            body = f"{cs}*{_format_word(w)}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# parsing ----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, domain: ScalarDomain):
        self.text = text
        self.pos = 0
        self.dom = domain

    def error(self, msg: str):
        raise PolySyntaxError(msg, len(self.text[:self.pos].encode()))

    def ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def int_(self) -> int:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def coeff(self):
        num = self.int_()
        if self.peek() == "/":
            self.pos += 1
            self.ws()
            start = self.pos
            den = self.int_()
            if den == 0:
                self.pos = start
                self.error("zero denominator")
            if isinstance(self.dom, PrimeField):
                return self.dom.mul(self.dom.from_int(num), self.dom.inv(self.dom.from_int(den)))
            return self.dom.coerce(Fraction(num, den))
        return self.dom.from_int(num)

    def factor(self) -> tuple:
        if self.peek() != "x":
            self.error("expected a variable x<k>")
        start = self.pos
        self.pos += 1
        j = self.pos
        while j < len(self.text) and self.text[j].isalnum():
            j += 1
        name = self.text[self.pos:j]
        if not name.isdigit() or int(name) < 1:
            raise UnknownVariable(f"unknown variable {self.text[start:j]!r} at offset {start}")
        self.pos = j
        v = int(name)
        k = 1
        if self.peek() == "^":
            self.pos += 1
            k = self.int_()
        return (v,) * k

    def term(self):
        c = self.dom.one()
        word: tuple = ()
        if self.peek().isdigit():
            c = self.coeff()
            if self.peek() != "*":
                return c, word
            self.pos += 1
        word += self.factor()
        while self.peek() == "*":
            self.pos += 1
            word += self.factor()
        return c, word

    def expr(self) -> list:
        terms = []
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        while True:
            c, w = self.term()
            terms.append((c if sign > 0 else self.dom.neg(c), w))
            ch = self.peek()
            if not ch:
                return terms
            if ch not in "+-":
                self.error(f"unexpected {ch!r}")
            sign = -1 if ch == "-" else 1
            self.pos += 1


def parse_poly(text: str, domain: ScalarDomain = QQ) -> FreePoly:
    if not domain.commutative:
        raise DomainMismatch("polynomial coefficients live in a field")
    return FreePoly.from_terms(domain, _Parser(text, domain).expr())


# evaluation ------------------------------------------------------------

def _embed_coeff(cdom: ScalarDomain, mdom: ScalarDomain, c):
    if cdom == mdom:
        return c
    if isinstance(cdom, Rational) and (mdom.is_quaternion or isinstance(mdom, Rational)):
        return mdom.from_base(c)
    raise DomainMismatch(f"{cdom} coefficients do not embed in {mdom}")


def evaluate(f: FreePoly, args: Sequence[Matrix]) -> Matrix:
    if len(args) < f.nvars:
        raise ArityMismatch(f"{f.nvars} variables, {len(args)} arguments")
    if not args:
        raise ArityMismatch("need at least one argument to fix the matrix size")
    dom = args[0].domain
    n = args[0].nrows
    for a in args:
        if a.domain != dom:
            raise DomainMismatch("arguments from different domains")
        if a.shape != (n, n):
            raise ArityMismatch("arguments must be square of one size")
    cache: dict[tuple, Matrix] = {(): Matrix.identity(dom, n)}

    def word_value(w: tuple) -> Matrix:
        if w not in cache:
            cache[w] = word_value(w[:-1]) @ args[w[-1] - 1]
        return cache[w]

    out = Matrix.zeros(dom, n)
    for c, w in f.terms:
        out = out + word_value(w).lscale(_embed_coeff(f.domain, dom, c))
    return out


# structure -------------------------------------------------------------

def is_multilinear(f: FreePoly) -> bool:
    m = f.nvars
    target = tuple(range(1, m + 1))
    return all(tuple(sorted(w)) == target for _, w in f.terms)


def tilde_normalize(f: FreePoly) -> FreePoly:
    return FreePoly.from_terms(f.domain, ((c, tuple(sorted(w))) for c, w in f.terms))


def coefficient_sum(f: FreePoly) -> Scalar:
    if not is_multilinear(f):
        raise NotMultilinear("coefficient sum is defined for multilinear polynomials")
    d = f.domain
    s = d.zero()
    for c, _ in f.terms:
        s = d.add(s, c)
    return Scalar(d, s)


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def standard_poly(m: int, domain: ScalarDomain = QQ) -> FreePoly:
    if m < 1:
        raise ValueError("m ≥ 1")
    if m > MAX_STANDARD_DEGREE:
        raise BudgetExceeded(f"S_{m} has {math.factorial(m)} terms (cap is degree {MAX_STANDARD_DEGREE})")
    terms = [(domain.from_int(_perm_sign(p)), tuple(i + 1 for i in p))
             for p in itertools.permutations(range(m))]
    return FreePoly.from_terms(domain, terms)


def commutator_poly(domain: ScalarDomain = QQ) -> FreePoly:
    return standard_poly(2, domain)


def p_commutator_poly(betas: Sequence, domain: ScalarDomain = QQ) -> FreePoly:
    """p(x1 x2) − p(x2 x1) for p = Σ β_k t^k given lowest-first."""
    if len(betas) < 2:
        raise ValueError("need degree ≥ 1")
    terms = []
    for k, b in enumerate(betas):
        if k == 0:
            continue
        b = domain.coerce(b)
        terms.append((b, (1, 2) * k))
        terms.append((domain.neg(b), (2, 1) * k))
    return FreePoly.from_terms(domain, terms)
