"""One-time preprocessing: column blocking, binary row ordering, full segmentation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BinaryMatrix, TernaryMatrix, decompose_ternary

MAX_K = 30


def max_k_for_rows(rows: int) -> int:
    """Largest admissible block width: min(30, max(1, floor(log2 rows)))."""
    return min(MAX_K, max(1, int(rows).bit_length() - 1))


def _check_k(k: int, rows: int) -> None:
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k must be in [1, {MAX_K}], got {k}")
    if k > max_k_for_rows(rows):
        raise ValueError(f"k={k} exceeds max {max_k_for_rows(rows)} for {rows} rows")


# ---------------------------------------------------------------------------
# index types
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class BlockIndex:
    """Per-block record: width, row permutation, cumulative segmentation (length 2^width)."""

    width: int
    permutation: np.ndarray
    segmentation: np.ndarray

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BlockIndex)
            and self.width == other.width
            and np.array_equal(self.permutation, other.permutation)
            and np.array_equal(self.segmentation, other.segmentation)
        )


class RsrIndex:
    """Preprocessed index of one binary matrix: one BlockIndex per column block.

    Internally the blocks live in flat arrays shared by the multiply kernels;
    the public blocks tuple holds read-only views into them.  The bucket value
    of every row per block is cached at construction so segment sums can be
    accumulated in original row order (bitwise-identical to permuted order
    because the row ordering is stable).
    """

    __slots__ = (
        "rows", "cols", "k", "blocks",
        "_perms", "_segs", "_seg_starts", "_widths", "_col_starts", "_buckets",
    )

    def __init__(self, rows, cols, k, perms, segs, seg_starts, widths, col_starts,
                 buckets=None):
        self.rows = int(rows)
        self.cols = int(cols)
        self.k = int(k)
        for arr in (perms, segs, seg_starts, widths, col_starts):
            arr.flags.writeable = False
        self._perms = perms
        self._segs = segs
        self._seg_starts = seg_starts
        self._widths = widths
        self._col_starts = col_starts
        if buckets is None:
            buckets = _buckets_from_segments(perms, segs, seg_starts, widths, self.k)
        buckets.flags.writeable = False
        self._buckets = buckets
        blocks = []
        for b in range(len(widths)):
            s0 = int(seg_starts[b])
            w = int(widths[b])
            blocks.append(BlockIndex(w, perms[b], segs[s0 : s0 + (1 << w)]))
        self.blocks = tuple(blocks)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @classmethod
    def from_blocks(cls, rows, cols, k, blocks) -> "RsrIndex":
        """Build and fully validate an index from per-block arrays."""
        rows, cols, k = int(rows), int(cols), int(k)
        if rows < 1 or cols < 1:
            raise ValueError("index dimensions must be at least 1x1")
        _check_k(k, rows)
        expected = column_blocks(cols, k)
        if len(blocks) != len(expected):
            raise ValueError(f"expected {len(expected)} blocks, got {len(blocks)}")
        nblocks = len(expected)
        perms = np.empty((nblocks, rows), np.uint32)
        seg_starts = np.empty(nblocks, np.int64)
        widths = np.empty(nblocks, np.int64)
        col_starts = np.empty(nblocks, np.int64)
        seg_parts = []
        offset = 0
        for b, ((start, width), blk) in enumerate(zip(expected, blocks)):
            if blk.width != width:
                raise ValueError(f"block {b}: width {blk.width} does not partition {cols} columns")
            perm = np.asarray(blk.permutation)
            seg = np.asarray(blk.segmentation, np.int64)
            if perm.shape != (rows,):
                raise ValueError(f"block {b}: permutation length must be {rows}")
            counts = np.bincount(perm.astype(np.int64), minlength=rows)
            if perm.size and (perm.astype(np.int64).max() >= rows or (counts != 1).any()):
                raise ValueError(f"block {b}: permutation is not a bijection")
            if seg.shape != (1 << width,):
                raise ValueError(f"block {b}: segmentation length must be {1 << width}")
            if seg[0] != 0:
                raise ValueError(f"block {b}: segmentation must start at 0")
            if (np.diff(seg) < 0).any() or seg[-1] > rows:
                raise ValueError(f"block {b}: segmentation must be non-decreasing and <= rows")
            perms[b] = perm
            widths[b] = width
            col_starts[b] = start
            seg_starts[b] = offset
            seg_parts.append(np.concatenate((seg, [rows])))
            offset += (1 << width) + 1
        segs = np.concatenate(seg_parts) if seg_parts else np.zeros(0, np.int64)
        return cls(rows, cols, k, perms, segs, seg_starts, widths, col_starts)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RsrIndex)
            and (self.rows, self.cols, self.k) == (other.rows, other.cols, other.k)
            and self.blocks == other.blocks
        )

    def __repr__(self) -> str:
        return f"RsrIndex({self.rows}x{self.cols}, k={self.k}, blocks={self.block_count})"


class TernaryIndex:
    """Pair of RsrIndex halves: positive marks +1 entries, negative marks -1."""

    __slots__ = ("positive", "negative")

    def __init__(self, positive: RsrIndex, negative: RsrIndex):
        if (positive.rows, positive.cols, positive.k) != (negative.rows, negative.cols, negative.k):
            raise ValueError("index halves must share rows, cols, and k")
        self.positive = positive
        self.negative = negative

    @property
    def rows(self) -> int:
        return self.positive.rows

    @property
    def cols(self) -> int:
        return self.positive.cols

    @property
    def k(self) -> int:
        return self.positive.k

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TernaryIndex)
            and self.positive == other.positive
            and self.negative == other.negative
        )

    def __repr__(self) -> str:
        return f"TernaryIndex({self.rows}x{self.cols}, k={self.k})"


def _buckets_from_segments(perms, segs, seg_starts, widths, k):
    """Recover per-row bucket values from permutations and segmentations."""
    nblocks, rows = perms.shape
    dtype = np.uint16 if k <= 16 else np.uint32
    buckets = np.empty((nblocks, rows), dtype)
    for b in range(nblocks):
        s0 = int(seg_starts[b])
        w = int(widths[b])
        reps = np.diff(segs[s0 : s0 + (1 << w) + 1])
        buckets[b, perms[b]] = np.repeat(np.arange(1 << w, dtype=dtype), reps)
    return buckets


# ---------------------------------------------------------------------------
# blocking and row ordering
# ---------------------------------------------------------------------------

def column_blocks(cols: int, k: int) -> list[tuple[int, int]]:
    """Contiguous (start, width) ranges covering all columns; last block may be short."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if cols < 1:
        raise ValueError("cols must be at least 1")
    return [(start, min(k, cols - start)) for start in range(0, cols, k)]


def bucket_value(B: BinaryMatrix, row: int, block_start: int, width: int) -> int:
    """Integer read MSB-first from the row's bits within the block."""
    if not 0 <= row < B.rows:
        raise ValueError(f"row {row} out of range")
    if width < 1 or block_start < 0 or block_start + width > B.cols:
        raise ValueError("block out of range")
    value = 0
    for c in range(block_start, block_start + width):
        bit = (B.bits[row, c >> 3] >> (7 - (c & 7))) & 1
        value = (value << 1) | int(bit)
    return value


def _block_bucket_values(dense_block: np.ndarray) -> np.ndarray:
    """Bucket values of every row of a dense 0/1 block, MSB-first."""
    width = dense_block.shape[1]
    weights = (1 << np.arange(width - 1, -1, -1)).astype(np.int64)
    return dense_block.astype(np.int64) @ weights


def binary_row_order(B: BinaryMatrix, block: tuple[int, int]) -> np.ndarray:
    """Stable sort of row indices by ascending bucket value within the block."""
    start, width = block
    if width < 1 or start < 0 or start + width > B.cols:
        raise ValueError("block out of range")
    values = _block_bucket_values(B.to_dense()[:, start : start + width])
    return np.argsort(values, kind="stable").astype(np.uint32)


def full_segmentation(B: BinaryMatrix, block: tuple[int, int], permutation) -> np.ndarray:
    """Cumulative counts L where L[j] = number of rows with bucket value < j."""
    start, width = block
    if width < 1 or start < 0 or start + width > B.cols:
        raise ValueError("block out of range")
    permutation = np.asarray(permutation, np.int64)
    if permutation.shape != (B.rows,):
        raise ValueError(f"permutation length must be {B.rows}")
    values = _block_bucket_values(B.to_dense()[:, start : start + width])
    ordered = values[permutation]
    if (np.diff(ordered) < 0).any():
        raise ValueError("permutation is not the binary row order of the block")
    counts = np.bincount(values, minlength=1 << width)
    return np.concatenate(([0], np.cumsum(counts)[:-1]))


# ---------------------------------------------------------------------------
# preprocessing
# ---------------------------------------------------------------------------

def preprocess(B: BinaryMatrix, k: int) -> RsrIndex:
    """Build the RsrIndex of a binary matrix: per block, stable row order + segmentation."""
    if not isinstance(B, BinaryMatrix):
        raise TypeError("preprocess expects a BinaryMatrix")
    _check_k(k, B.rows)
    dense = B.to_dense()
    blocks = column_blocks(B.cols, k)
    nblocks = len(blocks)
    rows = B.rows
    perms = np.empty((nblocks, rows), np.uint32)
    buckets = np.empty((nblocks, rows), np.uint16 if k <= 16 else np.uint32)
    widths = np.empty(nblocks, np.int64)
    col_starts = np.empty(nblocks, np.int64)
    seg_starts = np.empty(nblocks, np.int64)
    segs = np.empty(sum((1 << w) + 1 for _, w in blocks), np.int64)
    offset = 0
    for b, (start, width) in enumerate(blocks):
        values = _block_bucket_values(dense[:, start : start + width])
        perms[b] = np.argsort(values, kind="stable")
        buckets[b] = values
        widths[b] = width
        col_starts[b] = start
        seg_starts[b] = offset
        counts = np.bincount(values, minlength=1 << width)
        segs[offset] = 0
        np.cumsum(counts, out=segs[offset + 1 : offset + (1 << width) + 1])
        offset += (1 << width) + 1
    return RsrIndex(rows, B.cols, k, perms, segs, seg_starts, widths, col_starts, buckets)


def preprocess_ternary(A: TernaryMatrix, k: int) -> TernaryIndex:
    """Decompose A into binary halves and index each half with the same k."""
    if not isinstance(A, TernaryMatrix):
        raise TypeError("preprocess_ternary expects a TernaryMatrix")
    pair = decompose_ternary(A)
    return TernaryIndex(preprocess(pair.positive, k), preprocess(pair.negative, k))


def reconstruct_matrix(idx: RsrIndex) -> BinaryMatrix:
    """Invert preprocessing: rows in segment j carry the width-bit pattern of j."""
    dense = np.empty((idx.rows, idx.cols), np.uint8)
    for b, blk in enumerate(idx.blocks):
        s0 = int(idx._seg_starts[b])
        w = blk.width
        start = int(idx._col_starts[b])
        reps = np.diff(idx._segs[s0 : s0 + (1 << w) + 1])
        sorted_values = np.repeat(np.arange(1 << w, dtype=np.int64), reps)
        shifts = np.arange(w - 1, -1, -1)
        bits = (sorted_values[:, None] >> shifts) & 1
        dense[blk.permutation, start : start + w] = bits.astype(np.uint8)
    return BinaryMatrix.from_dense(dense)


# ---------------------------------------------------------------------------
# block-width tuning
# ---------------------------------------------------------------------------

def _rsr_term(n: int, k: int) -> int:
    return n + k * (1 << k)


def _rsrpp_term(n: int, k: int) -> int:
    return n + (1 << k)


def _scan_optimal(n: int, term) -> int:
    # cost(k) = (n/k) * term(n, k); compared exactly via cross-multiplication
    if n < 1:
        raise ValueError("n must be at least 1")
    best_k = 1
    best_term = term(n, 1)
    for k in range(2, max_k_for_rows(n) + 1):
        t = term(n, k)
        if t * best_k < best_term * k:
            best_k, best_term = k, t
    return best_k


def _bisect_optimal(n: int, term) -> int:
    # valid because the cost differences are monotone in k for both models
    if n < 1:
        raise ValueError("n must be at least 1")
    lo, hi = 1, max_k_for_rows(n)
    while lo < hi:
        mid = (lo + hi) // 2
        if term(n, mid + 1) * mid < term(n, mid) * (mid + 1):
            lo = mid + 1
        else:
            hi = mid
    return lo


def optimal_k_rsr(n: int) -> int:
    """k minimizing (n/k)(n + k*2^k); ties go to the smaller k."""
    return _scan_optimal(n, _rsr_term)


def optimal_k_rsrpp(n: int) -> int:
    """k minimizing (n/k)(n + 2^k); ties go to the smaller k."""
    return _scan_optimal(n, _rsrpp_term)


def optimal_k_rsr_bisect(n: int) -> int:
    """Binary-search variant of optimal_k_rsr, kept as a cross-check."""
    return _bisect_optimal(n, _rsr_term)


def optimal_k_rsrpp_bisect(n: int) -> int:
    """Binary-search variant of optimal_k_rsrpp, kept as a cross-check."""
    return _bisect_optimal(n, _rsrpp_term)
