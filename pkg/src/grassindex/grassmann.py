"""Borel presentation of H*(G_n(R^(n+k)); F_2) and the complement-swap action."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .f2_linalg import BitMatrix, Echelon, dedupe_rows, pack_int, rank
from .monomials import Alphabet, F2Poly, Monomial, enumerate_monomials, mono_mul


class UnsupportedActionError(ValueError):
    """The swap action only exists on G_n(R^2n)."""


def w_alphabet(n: int) -> Alphabet:
    return Alphabet.of((f"w{i}", i) for i in range(1, n + 1))


def dual_classes(n: int, k: int) -> list[F2Poly]:
    """``[wbar_1, ..., wbar_k]`` as polynomials in ``w_1..w_n``."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    alpha = w_alphabet(n)
    duals = [F2Poly.one(alpha)]
    for j in range(1, k + 1):
        acc = F2Poly.zero(alpha)
        for i in range(1, min(j, n) + 1):
            acc = acc + F2Poly.gen(alpha, f"w{i}") * duals[j - i]
        duals.append(acc)
    return duals[1:]


@dataclass(frozen=True)
class GrassmannRing:
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be >= 1")

    @cached_property
    def alphabet(self) -> Alphabet:
        pairs = [(f"w{i}", i) for i in range(1, self.n + 1)]
        pairs += [(f"wbar{j}", j) for j in range(1, self.k + 1)]
        return Alphabet.of(pairs)

    @property
    def top_degree(self) -> int:
        return self.n * self.k

    def w(self, i: int) -> Monomial:
        return self.alphabet.one if i == 0 else self.alphabet.gen(f"w{i}")

    def wbar(self, j: int) -> Monomial:
        return self.alphabet.one if j == 0 else self.alphabet.gen(f"wbar{j}")

    @cached_property
    def relation_generators(self) -> list[F2Poly]:
        """Homogeneous parts of ``(1 + w_1 + ... + w_n)(1 + wbar_1 + ... + wbar_k) - 1``."""
        rels = []
        for d in range(1, self.n + self.k + 1):
            terms = [
                mono_mul(self.w(i), self.wbar(d - i))
                for i in range(max(0, d - self.k), min(d, self.n) + 1)
            ]
            rels.append(F2Poly.from_terms(self.alphabet, terms))
        return rels

    def ideal_matrix(self, j: int) -> tuple[list[Monomial], BitMatrix]:
        """Monomial basis of degree ``j`` and the spanning rows of the ideal there."""
        basis = enumerate_monomials(self.alphabet, j)
        index = {m: c for c, m in enumerate(basis)}
        rows = set()
        for rel in self.relation_generators:
            e = rel.degree()
            if e > j:
                continue
            for m in enumerate_monomials(self.alphabet, j - e):
                v = 0
                for t in rel.terms:
                    v ^= 1 << index[mono_mul(t, m)]
                if v:
                    rows.add(v)
        if not rows:
            return basis, BitMatrix.zeros(0, len(basis))
        return basis, dedupe_rows(BitMatrix.from_ints(sorted(rows), len(basis)))

    def slice(self, j: int) -> "QuotientSlice":
        basis, mat = self.ideal_matrix(j)
        return QuotientSlice(self, j, basis, Echelon.of(mat))


@dataclass(frozen=True)
class QuotientSlice:
    """Degree-``j`` piece of the quotient with coset normal forms.

    Pivot columns of the reduced ideal are the leading monomials; the
    remaining monomials form the normal-form basis.
    """

    ring: GrassmannRing
    degree: int
    monomials: list
    echelon: Echelon

    @property
    def dimension(self) -> int:
        return len(self.monomials) - self.echelon.rank

    @cached_property
    def normal_basis(self) -> list[Monomial]:
        return [self.monomials[c] for c in self.echelon.free_columns()]

    def _vector(self, p: F2Poly):
        index = {m: c for c, m in enumerate(self.monomials)}
        v = 0
        for t in p.terms:
            v ^= 1 << index[t]
        return pack_int(v, len(self.monomials))

    def coordinates(self, p: F2Poly) -> list[int]:
        """Coordinates of ``p`` in the normal-form basis."""
        residue = self.echelon.reduce(self._vector(p))
        out = []
        for c in self.echelon.free_columns():
            out.append((int(residue[c // 64]) >> (c % 64)) & 1)
        return out

    def normal_form(self, p: F2Poly) -> F2Poly:
        coords = self.coordinates(p)
        return F2Poly.from_terms(self.ring.alphabet, [m for m, c in zip(self.normal_basis, coords) if c])

    def is_zero(self, p: F2Poly) -> bool:
        return not any(self.coordinates(p))


def graded_dimension(r: GrassmannRing, j: int) -> int:
    """dim H^j: monomials of degree ``j`` minus the rank of the ideal slice."""
    if j < 0:
        raise ValueError("degree must be non-negative")
    return r.slice(j).dimension


def swap_action(p: F2Poly, r: GrassmannRing) -> F2Poly:
    """``w_i <-> wbar_i`` in every monomial."""
    if r.n != r.k:
        raise UnsupportedActionError(f"swap needs n == k, got n={r.n}, k={r.k}")
    if p.alphabet != r.alphabet:
        raise ValueError("polynomial is not over this ring's alphabet")
    n = r.n
    return F2Poly(r.alphabet, frozenset(m[n:] + m[:n] for m in p.terms))


@dataclass(frozen=True)
class Z2ModuleDecomposition:
    degree: int
    free_rank: int
    trivial_rank: int

    @property
    def dimension(self) -> int:
        return 2 * self.free_rank + self.trivial_rank


def z2_decompose(n: int, j: int) -> Z2ModuleDecomposition:
    """Split H^j(G_n(R^2n)) into regular and trivial Z/2 summands.

    ``free_rank`` is the rank of ``1 + omega`` on the normal-form basis.
    """
    ring = GrassmannRing(n, n)
    sl = ring.slice(j)
    cols = []
    for m in sl.normal_basis:
        b = F2Poly(ring.alphabet, frozenset([m]))
        cols.append(sl.coordinates(b + swap_action(b, ring)))
    dim = sl.dimension
    if dim == 0:
        return Z2ModuleDecomposition(j, 0, 0)
    free = rank(BitMatrix.from_dense(cols)) if cols else 0
    return Z2ModuleDecomposition(j, free, dim - 2 * free)


def borel_e2_dimension(n: int, i: int, j: int) -> int:
    """dim E_2^{i,j} of the Borel-construction spectral sequence of G_n(R^2n)."""
    if i < 0 or j < 0:
        raise ValueError("bidegree must be non-negative")
    dec = z2_decompose(n, j)
    return dec.free_rank + dec.trivial_rank if i == 0 else dec.trivial_rank


def e2_table(n: int, columns: int) -> list[list[int]]:
    """Rows ``j = 0..n^2``, columns ``i = 0..columns-1``."""
    table = []
    for j in range(n * n + 1):
        dec = z2_decompose(n, j)
        table.append([dec.free_rank + dec.trivial_rank] + [dec.trivial_rank] * (columns - 1))
    return table
