"""Bit-packed linear algebra over the two-element field.

Rows are stored as little-endian arrays of 64-bit words: column ``c`` lives
in word ``c // 64`` at bit ``c % 64``.  Bits past ``cols`` are always zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

WORD = 64


def _n_words(cols: int) -> int:
    return max(1, (cols + WORD - 1) // WORD)


def pack_int(value: int, cols: int) -> np.ndarray:
    """Pack a Python int bitmask (bit ``c`` = column ``c``) into words."""
    if value < 0 or value.bit_length() > cols:
        raise ValueError(f"bitmask does not fit in {cols} columns")
    words = _n_words(cols)
    return np.frombuffer(value.to_bytes(words * 8, "little"), dtype="<u8").astype(np.uint64)


def pack_bits(bits: Sequence[int] | np.ndarray, cols: int | None = None) -> np.ndarray:
    arr = np.asarray(bits, dtype=np.uint8).ravel()
    if cols is None:
        cols = arr.size
    if arr.size != cols:
        raise ValueError(f"vector has length {arr.size}, expected {cols}")
    words = _n_words(cols)
    packed = np.packbits(arr & 1, bitorder="little")
    buf = np.zeros(words * 8, dtype=np.uint8)
    buf[: packed.size] = packed
    return buf.view("<u8").astype(np.uint64)


def unpack_bits(words: np.ndarray, cols: int) -> np.ndarray:
    raw = np.ascontiguousarray(words, dtype="<u8").view(np.uint8)
    return np.unpackbits(raw, bitorder="little")[:cols].astype(np.uint8)


@dataclass(frozen=True, eq=False)
class BitMatrix:
    """Immutable F_2 matrix with packed rows."""

    rows: int
    cols: int
    data: np.ndarray

    def __post_init__(self):
        if self.data.shape != (self.rows, _n_words(self.cols)):
            raise ValueError("packed data has the wrong shape")
        self.data.setflags(write=False)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, _n_words(cols)), dtype=np.uint64))

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        arr = np.asarray(dense, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows, cols = arr.shape
        data = np.zeros((rows, _n_words(cols)), dtype=np.uint64)
        for r in range(rows):
            data[r] = pack_bits(arr[r], cols)
        return cls(rows, cols, data)

    @classmethod
    def from_ints(cls, values: Iterable[int], cols: int) -> "BitMatrix":
        values = list(values)
        data = np.zeros((len(values), _n_words(cols)), dtype=np.uint64)
        for r, v in enumerate(values):
            data[r] = pack_int(v, cols)
        return cls(len(values), cols, data)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for r in range(self.rows):
            out[r] = unpack_bits(self.data[r], self.cols)
        return out

    def row_bits(self, r: int) -> np.ndarray:
        return unpack_bits(self.data[r], self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and bool(
            np.array_equal(self.data, other.data)
        )

    def __repr__(self) -> str:
        return f"BitMatrix(rows={self.rows}, cols={self.cols})"


def dedupe_rows(m: BitMatrix) -> BitMatrix:
    """Drop zero rows and duplicates; keeps first occurrences in order."""
    if m.rows == 0:
        return m
    nonzero = m.data.any(axis=1)
    data = m.data[nonzero]
    if data.shape[0] == 0:
        return BitMatrix.zeros(0, m.cols)
    _, first = np.unique(data, axis=0, return_index=True)
    data = data[np.sort(first)]
    return BitMatrix(data.shape[0], m.cols, np.array(data))


def row_reduce(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row-echelon form and pivot columns.

    Zero rows are dropped from the result, so ``result.rows`` is the rank.
    """
    a = np.array(m.data, copy=True)
    nrows = a.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r >= nrows:
            break
        w = c // WORD
        mask = np.uint64(1 << (c % WORD))
        below = np.flatnonzero(a[r:, w] & mask)
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        hits = np.flatnonzero(a[:, w] & mask)
        hits = hits[hits != r]
        if hits.size:
            a[hits] ^= a[r]
        pivots.append(c)
        r += 1
        # squeeze out rows that were zeroed, keeps later sweeps short
        if len(pivots) % 128 == 0 and r < nrows:
            tail = a[r:]
            keep = tail.any(axis=1)
            if not keep.all():
                a = np.concatenate([a[:r], tail[keep]])
                nrows = a.shape[0]
    return BitMatrix(r, m.cols, np.array(a[:r])), pivots


def rank(m: BitMatrix) -> int:
    return row_reduce(m)[0].rows


@dataclass(frozen=True)
class Echelon:
    """A row-reduced matrix kept around for repeated membership/normal-form queries."""

    rref: BitMatrix
    pivots: tuple[int, ...]

    @classmethod
    def of(cls, m: BitMatrix) -> "Echelon":
        rref, pivots = row_reduce(m)
        return cls(rref, tuple(pivots))

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def cols(self) -> int:
        return self.rref.cols

    def reduce(self, words: np.ndarray) -> np.ndarray:
        """Residue of a packed vector after clearing every pivot column."""
        v = np.array(words, dtype=np.uint64, copy=True)
        for i, c in enumerate(self.pivots):
            if (int(v[c // WORD]) >> (c % WORD)) & 1:
                v ^= self.rref.data[i]
        return v

    def contains(self, words: np.ndarray) -> bool:
        return not self.reduce(words).any()

    def free_columns(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.cols) if c not in piv]


def _as_words(v, cols: int) -> np.ndarray:
    if isinstance(v, int) and not isinstance(v, bool):
        return pack_int(v, cols)
    return pack_bits(v, cols)


def in_rowspace(v, m: BitMatrix) -> bool:
    """True iff ``v`` (0/1 sequence or int bitmask) is an F_2 combination of rows of ``m``."""
    if not isinstance(v, int):
        length = np.asarray(v).size
        if length != m.cols:
            raise ValueError(f"vector has length {length}, matrix has {m.cols} columns")
    return Echelon.of(m).contains(_as_words(v, m.cols))
