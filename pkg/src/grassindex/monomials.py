"""Weighted monomials over a named generator alphabet, and F_2 polynomials.

A monomial is a plain tuple of exponents aligned with an :class:`Alphabet`;
the empty product (all zeros) is the unit.  Canonical order is graded-lex:
degree first, then tuple comparison of the exponent vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be unique")
        if any(d < 1 for d in self.degrees):
            raise ValueError("generator degrees must be >= 1")

    @classmethod
    def of(cls, pairs: Iterable[tuple[str, int]]) -> "Alphabet":
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    def __len__(self) -> int:
        return len(self.names)

    @property
    def one(self) -> Monomial:
        return (0,) * len(self.names)

    def gen(self, name: str) -> Monomial:
        i = self.names.index(name)
        return tuple(1 if j == i else 0 for j in range(len(self.names)))

    def degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def format(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return ".".join(parts) if parts else "1"


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def sort_key(alphabet: Alphabet, m: Monomial) -> tuple:
    return (alphabet.degree(m), m)


def compare(m1: Monomial, m2: Monomial, alphabet: Alphabet) -> int:
    """-1, 0 or 1 under the graded-lex order."""
    if len(m1) != len(alphabet) or len(m2) != len(alphabet):
        raise ValueError("monomial does not match the alphabet")
    k1, k2 = sort_key(alphabet, m1), sort_key(alphabet, m2)
    return (k1 > k2) - (k1 < k2)


@lru_cache(maxsize=None)
def _enumerate(degrees: tuple[int, ...], d: int) -> tuple[Monomial, ...]:
    if not degrees:
        return ((),) if d == 0 else ()
    head, rest = degrees[0], degrees[1:]
    out = []
    for e in range(d // head + 1):
        for tail in _enumerate(rest, d - e * head):
            out.append((e,) + tail)
    out.sort()
    return tuple(out)


def enumerate_monomials(alphabet: Alphabet, d: int) -> list[Monomial]:
    """All monomials of weighted degree exactly ``d``, in canonical order."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    return list(_enumerate(alphabet.degrees, d))


@dataclass(frozen=True)
class F2Poly:
    """A finite sum of distinct monomials with coefficients in F_2."""

    alphabet: Alphabet
    terms: frozenset

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "F2Poly":
        return cls(alphabet, frozenset())

    @classmethod
    def one(cls, alphabet: Alphabet) -> "F2Poly":
        return cls(alphabet, frozenset([alphabet.one]))

    @classmethod
    def gen(cls, alphabet: Alphabet, name: str) -> "F2Poly":
        return cls(alphabet, frozenset([alphabet.gen(name)]))

    @classmethod
    def from_terms(cls, alphabet: Alphabet, terms: Iterable[Monomial]) -> "F2Poly":
        acc: set = set()
        for m in terms:
            acc ^= {tuple(m)}
        return cls(alphabet, frozenset(acc))

    def _check(self, other: "F2Poly"):
        if self.alphabet != other.alphabet:
            raise ValueError("polynomials live over different alphabets")

    def __add__(self, other: "F2Poly") -> "F2Poly":
        self._check(other)
        return F2Poly(self.alphabet, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: "F2Poly") -> "F2Poly":
        return poly_mul(self, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Degree of a homogeneous polynomial."""
        degs = {self.alphabet.degree(m) for m in self.terms}
        if len(degs) != 1:
            raise ValueError("polynomial is zero or not homogeneous")
        return degs.pop()

    def homogeneous_part(self, d: int) -> "F2Poly":
        return F2Poly(self.alphabet, frozenset(m for m in self.terms if self.alphabet.degree(m) == d))

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms, key=lambda m: sort_key(self.alphabet, m))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(self.alphabet.format(m) for m in self.sorted_terms())


def poly_mul(p: F2Poly, q: F2Poly) -> F2Poly:
    p._check(q)
    acc: set = set()
    for a in p.terms:
        for b in q.terms:
            acc ^= {mono_mul(a, b)}
    return F2Poly(p.alphabet, frozenset(acc))
