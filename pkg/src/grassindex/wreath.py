"""Cohomology of the wreath square B(O(n) wr Z/2) (or B(SO(n) wr Z/2)) over F_2.

Additive basis: ``t^i P(m)`` for a monomial ``m`` in the Stiefel-Whitney
classes and ``i >= 0``, together with ``Q(m1|m2)`` for ``m1 < m2``.  The ring
law is the collapsed E_infinity law:

* ``t^i P(m) * t^j P(m') = t^(i+j) P(m m')``
* ``t^i P(m) * Q(a|b) = Q(ma|mb)`` if ``i == 0`` and zero otherwise
* ``Q(a|b) * Q(c|d) = Q(ac|bd) + Q(ad|bc)``, with ``Q(x|x) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .monomials import Alphabet, F2Poly, Monomial, enumerate_monomials, mono_mul

TKey = tuple[int, Monomial]
QKey = tuple[Monomial, Monomial]


@dataclass(frozen=True)
class WreathContext:
    """Rank ``n`` and variant; the oriented variant has no ``w1``."""

    n: int
    oriented: bool = False
    alphabet: Alphabet = field(default=None, compare=True)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("rank n must be >= 1")
        if self.alphabet is None:
            start = 2 if self.oriented else 1
            alpha = Alphabet.of((f"w{i}", i) for i in range(start, self.n + 1))
            object.__setattr__(self, "alphabet", alpha)

    @classmethod
    def custom(cls, alphabet: Alphabet) -> "WreathContext":
        """Context over an arbitrary alphabet (used for splitting-principle checks)."""
        return cls(n=max(1, len(alphabet)), oriented=False, alphabet=alphabet)

    @property
    def one(self) -> Monomial:
        return self.alphabet.one

    def w(self, i: int) -> Monomial | None:
        """Monomial for ``w_i`` (``w_0 = 1``); None when the class vanishes."""
        if i == 0:
            return self.one
        name = f"w{i}"
        if name not in self.alphabet.names:
            return None
        return self.alphabet.gen(name)

    def key(self, m: Monomial) -> tuple:
        return (self.alphabet.degree(m), m)

    def mdeg(self, m: Monomial) -> int:
        return self.alphabet.degree(m)

    def canon_q(self, a: Monomial, b: Monomial) -> QKey | None:
        if a == b:
            return None
        return (a, b) if self.key(a) < self.key(b) else (b, a)


def _toggle(s: set, x) -> None:
    if x in s:
        s.remove(x)
    else:
        s.add(x)


@dataclass(frozen=True)
class WreathElement:
    ctx: WreathContext
    t_part: frozenset = frozenset()
    q_part: frozenset = frozenset()

    @classmethod
    def zero(cls, ctx: WreathContext) -> "WreathElement":
        return cls(ctx)

    @classmethod
    def unit(cls, ctx: WreathContext) -> "WreathElement":
        return cls(ctx, frozenset([(0, ctx.one)]))

    @classmethod
    def t(cls, ctx: WreathContext, power: int = 1) -> "WreathElement":
        return cls(ctx, frozenset([(power, ctx.one)]))

    @classmethod
    def tp(cls, ctx: WreathContext, power: int, m: Monomial) -> "WreathElement":
        return cls(ctx, frozenset([(power, tuple(m))]))

    def _check(self, other: "WreathElement"):
        if self.ctx != other.ctx:
            raise ValueError("wreath elements from different contexts")

    def __add__(self, other: "WreathElement") -> "WreathElement":
        self._check(other)
        return WreathElement(self.ctx, self.t_part ^ other.t_part, self.q_part ^ other.q_part)

    __sub__ = __add__

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        return multiply(self, other)

    def __bool__(self) -> bool:
        return bool(self.t_part or self.q_part)

    def is_zero(self) -> bool:
        return not self

    def basis_keys(self) -> list[tuple]:
        ctx = self.ctx
        ts = sorted(self.t_part, key=lambda e: (e[0] + 2 * ctx.mdeg(e[1]), e[0], ctx.key(e[1])))
        qs = sorted(self.q_part, key=lambda e: (ctx.mdeg(e[0]) + ctx.mdeg(e[1]), ctx.key(e[0]), ctx.key(e[1])))
        return [("t",) + e for e in ts] + [("q",) + e for e in qs]

    def degrees(self) -> set[int]:
        ctx = self.ctx
        out = {i + 2 * ctx.mdeg(m) for i, m in self.t_part}
        out |= {ctx.mdeg(a) + ctx.mdeg(b) for a, b in self.q_part}
        return out

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("element is zero or not homogeneous")
        return degs.pop()

    def homogeneous_part(self, d: int) -> "WreathElement":
        ctx = self.ctx
        return WreathElement(
            ctx,
            frozenset(e for e in self.t_part if e[0] + 2 * ctx.mdeg(e[1]) == d),
            frozenset(e for e in self.q_part if ctx.mdeg(e[0]) + ctx.mdeg(e[1]) == d),
        )

    def __str__(self) -> str:
        if not self:
            return "0"
        fmt = self.ctx.alphabet.format
        terms = []
        for key in self.basis_keys():
            if key[0] == "t":
                _, i, m = key
                tpart = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                if m == self.ctx.one:
                    terms.append(tpart or "1")
                else:
                    terms.append(f"{tpart}.P({fmt(m)})" if tpart else f"P({fmt(m)})")
            else:
                _, a, b = key
                terms.append(f"Q({fmt(a)}|{fmt(b)})")
        return " + ".join(terms)


def p_of(p: F2Poly, ctx: WreathContext) -> WreathElement:
    """``P`` of a polynomial: sum of ``P(m_i)`` plus ``Q(m_i|m_j)`` over pairs."""
    if p.alphabet != ctx.alphabet:
        raise ValueError("polynomial is over a different alphabet")
    terms = sorted(p.terms, key=ctx.key)
    ts = frozenset((0, m) for m in terms)
    qs: set = set()
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            _toggle(qs, ctx.canon_q(terms[i], terms[j]))
    return WreathElement(ctx, ts, frozenset(qs))


def q_of(m1: Monomial, m2: Monomial, ctx: WreathContext) -> WreathElement:
    key = ctx.canon_q(tuple(m1), tuple(m2))
    if key is None:
        return WreathElement.zero(ctx)
    return WreathElement(ctx, frozenset(), frozenset([key]))


def multiply(x: WreathElement, y: WreathElement) -> WreathElement:
    x._check(y)
    ctx = x.ctx
    ts: set = set()
    qs: set = set()
    for i, m in x.t_part:
        for j, m2 in y.t_part:
            _toggle(ts, (i + j, mono_mul(m, m2)))
    for tx, qy in ((x.t_part, y.q_part), (y.t_part, x.q_part)):
        for i, m in tx:
            if i:
                continue
            for a, b in qy:
                _toggle(qs, ctx.canon_q(mono_mul(m, a), mono_mul(m, b)))
    for a, b in x.q_part:
        for c, d in y.q_part:
            for u, v in ((mono_mul(a, c), mono_mul(b, d)), (mono_mul(a, d), mono_mul(b, c))):
                k = ctx.canon_q(u, v)
                if k is not None:
                    _toggle(qs, k)
    return WreathElement(ctx, frozenset(ts), frozenset(qs))


@lru_cache(maxsize=None)
def _slice_basis(ctx: WreathContext, d: int) -> tuple[tuple, ...]:
    alpha = ctx.alphabet
    out: list[tuple] = []
    for md in range(d // 2 + 1):
        for m in enumerate_monomials(alpha, md):
            out.append(("t", d - 2 * md, m))
    out.sort(key=lambda e: (e[1], ctx.key(e[2])))
    qs = []
    for d1 in range(d // 2 + 1):
        left = enumerate_monomials(alpha, d1)
        right = enumerate_monomials(alpha, d - d1)
        for a in left:
            for b in right:
                k = ctx.canon_q(a, b)
                if k is not None and (d1 < d - d1 or k == (a, b)):
                    qs.append(("q",) + k)
    qs.sort(key=lambda e: (ctx.key(e[1]), ctx.key(e[2])))
    return tuple(out + qs)


def degree_slice_basis(ctx: WreathContext, d: int) -> list[tuple]:
    """Ordered basis of degree ``d``: ``("t", i, m)`` then ``("q", m1, m2)`` keys."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    return list(_slice_basis(ctx, d))


def basis_element(ctx: WreathContext, key: tuple) -> WreathElement:
    if key[0] == "t":
        return WreathElement(ctx, frozenset([(key[1], key[2])]))
    return WreathElement(ctx, frozenset(), frozenset([(key[1], key[2])]))


def binom_mod2(a: int, b: int) -> int:
    """C(a, b) mod 2 by comparing binary digits (Lucas)."""
    if b < 0 or a < 0 or b > a:
        return 0
    while b:
        if (b & 1) > (a & 1):
            return 0
        a >>= 1
        b >>= 1
    return 1


def wreath_sw_component(ctx: WreathContext, k: int) -> WreathElement:
    """Degree-``k`` Stiefel-Whitney class of the wreath square of the universal bundle."""
    n = ctx.n
    if not 0 <= k <= 2 * n:
        raise ValueError(f"component degree {k} outside 0..{2 * n}")
    ts: set = set()
    qs: set = set()
    lo = max(0, k - n)
    for i in range(lo, (k - 1) // 2 + 1):
        a, b = ctx.w(i), ctx.w(k - i)
        if a is None or b is None:
            continue
        _toggle(qs, ctx.canon_q(a, b))
    for i in range(lo, k // 2 + 1):
        m = ctx.w(i)
        if m is None or not binom_mod2(n - i, k - 2 * i):
            continue
        _toggle(ts, (k - 2 * i, m))
    return WreathElement(ctx, frozenset(ts), frozenset(qs))


def wreath_total_sw(ctx: WreathContext) -> list[WreathElement]:
    """Components ``[u_0, u_1, ..., u_2n]``; ``u_0`` is the unit."""
    return [wreath_sw_component(ctx, k) for k in range(2 * ctx.n + 1)]


def total_sw_by_expansion(ctx: WreathContext) -> list[WreathElement]:
    """Same components, from the closed total-class formula expanded in the ring.

    Sums ``Q(w_r|w_s)`` over ``r < s`` and ``P(w_r) (1+t)^(n-r)``, where the
    powers of ``1+t`` come from repeated ring multiplication.
    """
    n = ctx.n
    one_plus_t = WreathElement.unit(ctx) + WreathElement.t(ctx)
    powers = [WreathElement.unit(ctx)]
    for _ in range(n):
        powers.append(powers[-1] * one_plus_t)
    total = WreathElement.zero(ctx)
    for r in range(n + 1):
        for s in range(r + 1, n + 1):
            a, b = ctx.w(r), ctx.w(s)
            if a is not None and b is not None:
                total = total + q_of(a, b, ctx)
    for r in range(n + 1):
        m = ctx.w(r)
        if m is not None:
            total = total + WreathElement.tp(ctx, 0, m) * powers[n - r]
    return [total.homogeneous_part(k) for k in range(2 * n + 1)]


def drop_w1(x: WreathElement, oriented: WreathContext) -> WreathElement:
    """Image of an unoriented element under ``w1 -> 0`` in the oriented context."""
    src = x.ctx
    if src.n != oriented.n or src.oriented or not oriented.oriented:
        raise ValueError("expects an unoriented element and the matching oriented context")

    def conv(m: Monomial) -> Monomial | None:
        return None if m[0] else m[1:]

    ts: set = set()
    qs: set = set()
    for i, m in x.t_part:
        cm = conv(m)
        if cm is not None:
            _toggle(ts, (i, cm))
    for a, b in x.q_part:
        ca, cb = conv(a), conv(b)
        if ca is not None and cb is not None:
            k = oriented.canon_q(ca, cb)
            if k is not None:
                _toggle(qs, k)
    return WreathElement(oriented, frozenset(ts), frozenset(qs))


# -- explicit tensor oracle -------------------------------------------------


@dataclass(frozen=True)
class TensorForm:
    """Element written out explicitly.

    ``tensors`` is the t-free part as a set of ordered pure tensors ``a (x) b``
    in H*(BO(n)) (x) H*(BO(n)); ``sheet`` holds the ``t^i P(m)`` terms, i >= 1.
    """

    tensors: frozenset
    sheet: frozenset


def tensor_expand(x: WreathElement) -> TensorForm:
    tens: set = set()
    sheet: set = set()
    for i, m in x.t_part:
        if i == 0:
            _toggle(tens, (m, m))
        else:
            _toggle(sheet, (i, m))
    for a, b in x.q_part:
        _toggle(tens, (a, b))
        _toggle(tens, (b, a))
    return TensorForm(frozenset(tens), frozenset(sheet))


def naive_product(x: TensorForm, y: TensorForm) -> TensorForm:
    """Term-by-term product of explicit forms.

    Tensors multiply factorwise.  A sheet term ``t^i P(m)`` only sees the
    diagonal ``c (x) c`` of a tensor, because ``t`` restricts an invariant
    tensor to its diagonal part.
    """
    tens: set = set()
    sheet: set = set()
    for a, b in x.tensors:
        for c, d in y.tensors:
            _toggle(tens, (mono_mul(a, c), mono_mul(b, d)))
    for i, m in x.sheet:
        for j, m2 in y.sheet:
            _toggle(sheet, (i + j, mono_mul(m, m2)))
    for sh, tn in ((x.sheet, y.tensors), (y.sheet, x.tensors)):
        for i, m in sh:
            for c, d in tn:
                if c == d:
                    _toggle(sheet, (i, mono_mul(m, c)))
    return TensorForm(frozenset(tens), frozenset(sheet))


def from_terms(ctx: WreathContext, keys: Iterable[tuple]) -> WreathElement:
    ts: set = set()
    qs: set = set()
    for key in keys:
        if key[0] == "t":
            _toggle(ts, (key[1], key[2]))
        else:
            k = ctx.canon_q(key[1], key[2])
            if k is not None:
                _toggle(qs, k)
    return WreathElement(ctx, frozenset(ts), frozenset(qs))


def random_element(ctx: WreathContext, d: int, rng) -> WreathElement:
    """Uniformly random homogeneous element of degree ``d`` (``rng`` is a numpy Generator)."""
    basis = degree_slice_basis(ctx, d)
    keep = rng.integers(0, 2, size=len(basis))
    return from_terms(ctx, [k for k, b in zip(basis, keep) if b])
