"""Fadell-Husseini index of G_n(R^2n) by degree-sliced ideal membership.

The kernel ideal J is generated by the homogeneous components of the total
Stiefel-Whitney class of the wreath square (components 1..2n unoriented,
2..2n oriented; the oriented degree-1 class is zero for even n).  The index
is ``<t^s>`` with ``s`` the least degree where ``t^s`` lies in ``J``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .f2_linalg import BitMatrix, Echelon, dedupe_rows, pack_int
from .wreath import (
    WreathContext,
    WreathElement,
    basis_element,
    degree_slice_basis,
    wreath_sw_component,
)

log = logging.getLogger(__name__)


class IndexSearchError(RuntimeError):
    """The ascending search hit its cap; this means a bug, not a math outcome."""


def two_adic(n: int) -> tuple[int, int]:
    """``(a, b)`` with ``n = 2^a (2b + 1)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a = 0
    while n % 2 == 0:
        n //= 2
        a += 1
    return a, (n - 1) // 2


def closed_form_power(n: int, oriented: bool) -> int:
    a, _ = two_adic(n)
    if oriented and a == 1:
        return 3
    return 2 ** (a + 1)


@dataclass
class DegreeSliceMatrix:
    degree: int
    basis: list[tuple]
    rows: BitMatrix

    def vector(self, x: WreathElement) -> np.ndarray:
        return pack_int(_encode(x, _index_of(self.basis)), len(self.basis))

    def echelon(self) -> Echelon:
        return Echelon.of(self.rows)

    def contains(self, x: WreathElement) -> bool:
        return self.echelon().contains(self.vector(x))


def _index_of(basis: Sequence[tuple]) -> dict:
    return {key: i for i, key in enumerate(basis)}


def _encode(x: WreathElement, index: dict) -> int:
    v = 0
    for i, m in x.t_part:
        v |= 1 << index[("t", i, m)]
    for a, b in x.q_part:
        v |= 1 << index[("q", a, b)]
    return v


def ideal_slice(ctx: WreathContext, generators: Sequence[WreathElement], d: int) -> DegreeSliceMatrix:
    """Degree-``d`` piece of the ideal spanned by ``generator * basis element``."""
    basis = degree_slice_basis(ctx, d)
    index = _index_of(basis)
    rows: set[int] = set()
    for g in generators:
        if not g:
            continue
        e = g.degree()
        if e < 1 or e > d:
            continue
        for key in degree_slice_basis(ctx, d - e):
            v = _encode(g * basis_element(ctx, key), index)
            if v:
                rows.add(v)
    ordered = sorted(rows)
    mat = dedupe_rows(BitMatrix.from_ints(ordered, len(basis))) if ordered else BitMatrix.zeros(0, len(basis))
    return DegreeSliceMatrix(d, basis, mat)


def kernel_generators(ctx: WreathContext, upto: int | None = None) -> list[WreathElement]:
    """Nonzero wreath-square classes of degree 1..``upto`` (default 2n)."""
    top = 2 * ctx.n if upto is None else upto
    gens = [wreath_sw_component(ctx, k) for k in range(1, top + 1)]
    return [g for g in gens if g]


def t_power_in_ideal(ctx: WreathContext, generators: Sequence[WreathElement], d: int) -> tuple[bool, int, int]:
    """Whether ``t^d`` is in the ideal; also returns (basis size, ideal rank)."""
    sl = ideal_slice(ctx, generators, d)
    ech = sl.echelon()
    inside = ech.contains(sl.vector(WreathElement.t(ctx, d)))
    return inside, len(sl.basis), ech.rank


@dataclass
class IndexCertificate:
    n: int
    oriented: bool
    s: int
    witness_in: bool | None
    witness_out: bool | None
    slice_dims: list[dict] = field(default_factory=list)
    closed_form_only: bool = False

    @property
    def variant(self) -> str:
        return "oriented" if self.oriented else "unoriented"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "variant": self.variant,
            "index_power": self.s,
            "closed_form_power": closed_form_power(self.n, self.oriented),
            "closed_form_only": self.closed_form_only,
            "witness_in_degree": self.s,
            "witness_in": self.witness_in,
            "witness_out_degree": self.s - 1 if self.s > 1 else None,
            "witness_out": self.witness_out,
            "slice_dims": [dict(d) for d in self.slice_dims],
        }


def index_power(n: int, oriented: bool) -> IndexCertificate:
    """Least ``s`` with ``t^s`` in the kernel ideal, with both witnesses.

    Oriented odd ``n`` is outside the kernel-ideal description; the closed
    form is returned and flagged.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if oriented and n % 2:
        return IndexCertificate(n, oriented, closed_form_power(n, True), None, None, [], True)
    ctx = WreathContext(n, oriented)
    gens = kernel_generators(ctx)
    dims = []
    prev_out = None
    for d in range(1, 4 * n + 1):
        inside, size, rk = t_power_in_ideal(ctx, gens, d)
        dims.append({"degree": d, "basis_size": size, "ideal_rank": rk})
        log.debug("n=%d %s d=%d basis=%d rank=%d in=%s", n, "SO" if oriented else "O", d, size, rk, inside)
        if inside:
            witness_out = None if d == 1 else prev_out
            return IndexCertificate(n, oriented, d, True, witness_out, dims)
        prev_out = True
    raise IndexSearchError(f"no power of t up to degree {4 * n} lies in the ideal (n={n})")


# -- relation suites --------------------------------------------------------


def _q_sum(ctx: WreathContext, k: int, hi: int) -> WreathElement:
    out = WreathElement.zero(ctx)
    for i in range(max(0, k - ctx.n), hi + 1):
        a, b = ctx.w(i), ctx.w(k - i)
        if a is None or b is None or a == b:
            continue
        out = out + WreathElement(ctx, frozenset(), frozenset([ctx.canon_q(a, b)]))
    return out


def _p(ctx: WreathContext, i: int) -> WreathElement:
    m = ctx.w(i)
    return WreathElement.zero(ctx) if m is None else WreathElement.tp(ctx, 0, m)


def relation_case(n: int, k: int) -> str:
    a, _ = two_adic(n)
    if k == 2 ** (a + 1) - 1:
        return "iv"
    if k % 2:
        return "i"
    if k in {2 ** (a + 1) - 2 ** (r + 1) for r in range(a)}:
        return "iii"
    return "ii"


def prop_relation(ctx: WreathContext, k: int) -> WreathElement:
    """The simplified degree-``k`` relation, moved to one side.

    Requires ``n`` even and ``1 <= k <= 2^(a+1) - 1``.
    """
    n = ctx.n
    a, _ = two_adic(n)
    if n % 2 or not 1 <= k <= 2 ** (a + 1) - 1:
        raise ValueError(f"relation undefined for n={n}, k={k}")
    case = relation_case(n, k)
    if case == "i":
        return _q_sum(ctx, k, (k - 1) // 2)
    if case == "ii":
        return _p(ctx, k // 2) + _q_sum(ctx, k, (k - 1) // 2)
    if case == "iii":
        r = next(r for r in range(a) if k == 2 ** (a + 1) - 2 ** (r + 1))
        return _p(ctx, 2**a - 2**r) + WreathElement.t(ctx, k) + _q_sum(ctx, k, 2**a - 2**r - 1)
    return WreathElement.t(ctx, 1) * _p(ctx, 2**a - 1) + _q_sum(ctx, k, 2**a - 1)


def verify_prop_relations(n: int, oriented: bool, k: int) -> bool:
    """``w_k`` minus the simplified relation lies in the ideal of components 1..k-1."""
    ctx = WreathContext(n, oriented)
    diff = wreath_sw_component(ctx, k) + prop_relation(ctx, k)
    if not diff:
        return True
    lower = kernel_generators(ctx, k - 1)
    return ideal_slice(ctx, lower, k).contains(diff)


def verify_t_vanishing(n: int, oriented: bool) -> bool:
    """``t^(2^(a+1))`` lies in the ideal of components 1..2^(a+1)-1 only."""
    if n % 2:
        raise ValueError("t-vanishing is stated for even n")
    a, _ = two_adic(n)
    top = 2 ** (a + 1)
    ctx = WreathContext(n, oriented)
    inside, _, _ = t_power_in_ideal(ctx, kernel_generators(ctx, top - 1), top)
    return inside
