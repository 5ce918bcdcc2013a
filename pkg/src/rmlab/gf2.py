"""Bit-packed linear algebra over GF(2).

Binary words are Python ints with bit j holding coordinate j (LSB first).
A matrix is a sequence of such ints, one per row, with an explicit column
count where the operation needs it.  Packed ints keep rank / solve /
span-membership loops fast enough for exhaustive pattern enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class InconsistentSystem(Exception):
    """Affine system M x = b has no solution."""


def parity(x: int) -> int:
    return x.bit_count() & 1


def pack_bits(bits: Iterable[int]) -> int:
    """Pack 0/1 entries into an int, index 0 -> bit 0."""
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.ndim != 1:
        raise ValueError("expected a 1-d bit vector")
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def unpack_bits(word: int, n: int) -> np.ndarray:
    """Inverse of pack_bits, returning a length-n uint8 array."""
    if word < 0:
        raise ValueError("negative word")
    nbytes = max(1, (n + 7) // 8)
    buf = word.to_bytes(nbytes, "little")
    return np.unpackbits(np.frombuffer(buf, dtype=np.uint8), bitorder="little")[:n].copy()


def _echelon(rows: Sequence[int]) -> dict[int, int]:
    # leading-bit-indexed basis of the row space
    basis: dict[int, int] = {}
    for row in rows:
        v = row
        while v:
            b = v.bit_length() - 1
            if b in basis:
                v ^= basis[b]
            else:
                basis[b] = v
                break
    return basis


def _reduce(v: int, basis: dict[int, int]) -> int:
    while v:
        b = v.bit_length() - 1
        if b not in basis:
            break
        v ^= basis[b]
    return v


def rank(rows: Sequence[int]) -> int:
    return len(_echelon(rows))


def in_span(rows: Sequence[int], v: int) -> bool:
    """True iff v lies in the row space of rows."""
    return _reduce(v, _echelon(rows)) == 0


def transpose(rows: Sequence[int], ncols: int) -> list[int]:
    out = [0] * ncols
    for i, row in enumerate(rows):
        bit = 1 << i
        r = row
        while r:
            j = r.bit_length() - 1
            out[j] |= bit
            r ^= 1 << j
    return out


def mat_vec(rows: Sequence[int], x: int) -> int:
    """y with y_i = <row_i, x> over GF(2), packed over row indices."""
    y = 0
    for i, row in enumerate(rows):
        if (row & x).bit_count() & 1:
            y |= 1 << i
    return y


@dataclass(frozen=True)
class AffineSolution:
    """Solution set {particular + span(nullspace_basis)} of M x = b."""

    particular: int
    nullspace_basis: tuple[int, ...]

    @property
    def count_exponent(self) -> int:
        return len(self.nullspace_basis)


def solve_affine(rows: Sequence[int], ncols: int, b: int) -> AffineSolution:
    """Solve M x = b for x over GF(2).

    rows: packed rows of M (bit j of rows[i] is M[i][j]), b packed over row
    indices.  The particular solution sets every free variable to zero.
    Raises InconsistentSystem when no solution exists.
    """
    aug = [row | (((b >> i) & 1) << ncols) for i, row in enumerate(rows)]
    pivot_of_col: dict[int, int] = {}  # col -> index into reduced
    reduced: list[int] = []
    for row in aug:
        v = row
        # eliminate with existing pivots
        for col, idx in pivot_of_col.items():
            if (v >> col) & 1:
                v ^= reduced[idx]
        if v == 0:
            continue
        if v == 1 << ncols:
            raise InconsistentSystem("no solution")
        col = (v & ((1 << ncols) - 1)).bit_length() - 1
        # back-substitute into previous rows
        for i, prev in enumerate(reduced):
            if (prev >> col) & 1:
                reduced[i] = prev ^ v
        pivot_of_col[col] = len(reduced)
        reduced.append(v)

    particular = 0
    for col, idx in pivot_of_col.items():
        if (reduced[idx] >> ncols) & 1:
            particular |= 1 << col
    basis = []
    for free in range(ncols):
        if free in pivot_of_col:
            continue
        vec = 1 << free
        for col, idx in pivot_of_col.items():
            if (reduced[idx] >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return AffineSolution(particular, tuple(basis))
