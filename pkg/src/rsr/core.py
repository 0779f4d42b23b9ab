"""Matrix and vector value types, ternary decomposition, and the naive oracle."""

from __future__ import annotations

from typing import NamedTuple, Union

import numpy as np
from numba import njit


class FormatError(ValueError):
    """Raised when a serialized artifact is malformed."""


# ---------------------------------------------------------------------------
# value types
# ---------------------------------------------------------------------------

class TernaryMatrix:
    """Dense row-major matrix with entries in {-1, 0, +1}, stored as int8."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: np.ndarray):
        entries = np.ascontiguousarray(entries)
        if entries.ndim != 2 or entries.shape[0] < 1 or entries.shape[1] < 1:
            raise ValueError("ternary matrix must be 2-D with at least one row and column")
        if entries.dtype != np.int8:
            as_i8 = entries.astype(np.int8)
            if not np.array_equal(as_i8, entries):
                raise ValueError("ternary entries must be -1, 0, or +1")
            entries = as_i8
        if not np.isin(entries, (-1, 0, 1)).all():
            raise ValueError("ternary entries must be -1, 0, or +1")
        entries = entries.copy()
        entries.flags.writeable = False
        self.rows = int(entries.shape[0])
        self.cols = int(entries.shape[1])
        self.entries = entries

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TernaryMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and np.array_equal(self.entries, other.entries)
        )

    def __repr__(self) -> str:
        return f"TernaryMatrix({self.rows}x{self.cols})"


class BinaryMatrix:
    """0/1 matrix, bit-packed MSB-first within each byte, rows padded to bytes."""

    __slots__ = ("rows", "cols", "bits")

    def __init__(self, rows: int, cols: int, bits: np.ndarray):
        rows = int(rows)
        cols = int(cols)
        if rows < 1 or cols < 1:
            raise ValueError("binary matrix must have at least one row and column")
        bits = np.ascontiguousarray(bits, dtype=np.uint8)
        row_bytes = (cols + 7) // 8
        if bits.shape != (rows, row_bytes):
            raise ValueError(f"bit storage must have shape ({rows}, {row_bytes})")
        # padding bits beyond cols must be zero
        pad = row_bytes * 8 - cols
        if pad and np.any(bits[:, -1] & ((1 << pad) - 1)):
            raise ValueError("padding bits must be zero")
        bits = bits.copy()
        bits.flags.writeable = False
        self.rows = rows
        self.cols = cols
        self.bits = bits

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> "BinaryMatrix":
        dense = np.ascontiguousarray(dense)
        if dense.ndim != 2 or dense.shape[0] < 1 or dense.shape[1] < 1:
            raise ValueError("binary matrix must be 2-D with at least one row and column")
        if not np.isin(dense, (0, 1)).all():
            raise ValueError("binary entries must be 0 or 1")
        packed = np.packbits(dense.astype(np.uint8), axis=1)
        return cls(dense.shape[0], dense.shape[1], packed)

    def to_dense(self) -> np.ndarray:
        return np.unpackbits(self.bits, axis=1, count=self.cols)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinaryMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and np.array_equal(self.bits, other.bits)
        )

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.rows}x{self.cols})"


Matrix = Union[TernaryMatrix, BinaryMatrix]


class DecompositionPair(NamedTuple):
    positive: BinaryMatrix
    negative: BinaryMatrix


def as_vector(values) -> np.ndarray:
    """Validate a real vector: 1-D, 64-bit float, finite, at least one entry."""
    v = np.ascontiguousarray(values, dtype=np.float64)
    if v.ndim != 1 or v.shape[0] < 1:
        raise ValueError("vector must be 1-D with at least one entry")
    if not np.isfinite(v).all():
        raise ValueError("vector entries must be finite")
    return v


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

def decompose_ternary(A: TernaryMatrix) -> DecompositionPair:
    """Split A into binary halves: positive marks +1 entries, negative marks -1."""
    positive = BinaryMatrix.from_dense(A.entries == 1)
    negative = BinaryMatrix.from_dense(A.entries == -1)
    return DecompositionPair(positive, negative)


# ---------------------------------------------------------------------------
# naive oracle
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _naive_ternary(v, entries, out):
    rows, cols = entries.shape
    for j in range(cols):
        out[j] = 0.0
    for i in range(rows):
        vi = v[i]
        for j in range(cols):
            out[j] += vi * entries[i, j]


@njit(cache=True, nogil=True)
def _naive_binary(v, bits, cols, out):
    rows = bits.shape[0]
    for j in range(cols):
        out[j] = 0.0
    for i in range(rows):
        vi = v[i]
        for j in range(cols):
            out[j] += vi * ((bits[i, j >> 3] >> (7 - (j & 7))) & 1)


def naive_multiply(v, A: Matrix) -> np.ndarray:
    """Reference triple loop, v . A with ascending-row summation order."""
    v = as_vector(v)
    if v.shape[0] != A.rows:
        raise ValueError(f"vector length {v.shape[0]} does not match {A.rows} rows")
    out = np.empty(A.cols, np.float64)
    if isinstance(A, TernaryMatrix):
        _naive_ternary(v, A.entries, out)
    elif isinstance(A, BinaryMatrix):
        _naive_binary(v, A.bits, A.cols, out)
    else:
        raise TypeError("expected TernaryMatrix or BinaryMatrix")
    return out
