"""Inference kernels: segmented sums, block products, fused multiply drivers."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import as_vector
from .indexer import BlockIndex, RsrIndex, TernaryIndex

_VARIANTS = {"rsr": False, "rsrpp": True, "rsr++": True}


def _use_fold(variant: str) -> bool:
    try:
        return _VARIANTS[str(variant).lower()]
    except KeyError:
        raise ValueError(f"variant must be rsr or rsrpp, got {variant!r}") from None


@dataclass(eq=False)
class SegmentedSums:
    """Per-bucket sums u of one block; length is exactly 2^width."""

    width: int
    sums: np.ndarray

    def __post_init__(self):
        self.sums = np.ascontiguousarray(self.sums, np.float64)
        if self.width < 1 or self.sums.shape != (1 << self.width,):
            raise ValueError(f"sums length must be 2^{self.width}")


def bin_pattern_bit(width: int, row: int, col: int) -> int:
    """Bit col (0 = most significant) of row's width-bit binary expansion."""
    if not 0 <= row < (1 << width):
        raise ValueError(f"row {row} out of range for width {width}")
    if not 0 <= col < width:
        raise ValueError(f"col {col} out of range for width {width}")
    return (row >> (width - 1 - col)) & 1


# ---------------------------------------------------------------------------
# per-block operations
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _segment_sums(v, perm, seg, out):
    rows = perm.shape[0]
    nseg = seg.shape[0]
    for j in range(nseg):
        lo = seg[j]
        hi = seg[j + 1] if j + 1 < nseg else rows
        acc = 0.0
        for p in range(lo, hi):
            acc += v[perm[p]]
        out[j] = acc


@njit(cache=True, nogil=True)
def _product_dense(u, width, col_start, out):
    nseg = 1 << width
    for c in range(width):
        shift = width - 1 - c
        acc = 0.0
        for j in range(nseg):
            acc += u[j] * ((j >> shift) & 1)
        out[col_start + c] = acc


@njit(cache=True, nogil=True)
def _product_fold(u, buf, width, col_start, out):
    # r[width-1] = sum of odd positions; then pairwise-compact and repeat
    half = (1 << width) >> 1
    acc = 0.0
    for t in range(half):
        acc += u[2 * t + 1]
        buf[t] = u[2 * t] + u[2 * t + 1]
    out[col_start + width - 1] = acc
    size = half
    for c in range(width - 2, -1, -1):
        half = size >> 1
        acc = 0.0
        for t in range(half):
            acc += buf[2 * t + 1]
            buf[t] = buf[2 * t] + buf[2 * t + 1]
        out[col_start + c] = acc
        size = half


def segmented_sum(v, block: BlockIndex) -> SegmentedSums:
    """Per-bucket sums: sums[j] = sum of v[perm[p]] over segment j, ascending p."""
    v = as_vector(v)
    if v.shape[0] != block.permutation.shape[0]:
        raise ValueError(f"vector length {v.shape[0]} does not match {block.permutation.shape[0]} rows")
    out = np.empty(1 << block.width, np.float64)
    _segment_sums(v, block.permutation, block.segmentation, out)
    return SegmentedSums(block.width, out)


def block_product_rsr(u: SegmentedSums) -> np.ndarray:
    """Product of u against the implicit Bin pattern, one column at a time."""
    out = np.empty(u.width, np.float64)
    _product_dense(u.sums, u.width, 0, out)
    return out


def block_product_rsrpp(u: SegmentedSums) -> np.ndarray:
    """Same value as block_product_rsr via the odd-sum / pairwise-compaction fold."""
    out = np.empty(u.width, np.float64)
    buf = np.empty(max(1, (1 << u.width) >> 1), np.float64)
    _product_fold(u.sums, buf, u.width, 0, out)
    return out


# ---------------------------------------------------------------------------
# fused multiply driver
# ---------------------------------------------------------------------------
# Segment sums are accumulated by scattering v in original row order into a
# per-block bucket accumulator.  Stability of the row ordering makes this
# bitwise-identical to gathering in ascending permuted position.  Blocks are
# processed four at a time so the sequential read of v is amortized.

@njit(cache=True, nogil=True)
def _run_blocks(v, buckets, widths, col_starts, b0, b1, kbuf, use_fold, out):
    rows = v.shape[0]
    u0 = np.empty(kbuf, np.float64)
    u1 = np.empty(kbuf, np.float64)
    u2 = np.empty(kbuf, np.float64)
    u3 = np.empty(kbuf, np.float64)
    buf = np.empty(max(1, kbuf >> 1), np.float64)
    b = b0
    while b + 4 <= b1:
        for j in range(1 << widths[b]):
            u0[j] = 0.0
        for j in range(1 << widths[b + 1]):
            u1[j] = 0.0
        for j in range(1 << widths[b + 2]):
            u2[j] = 0.0
        for j in range(1 << widths[b + 3]):
            u3[j] = 0.0
        g0 = buckets[b]
        g1 = buckets[b + 1]
        g2 = buckets[b + 2]
        g3 = buckets[b + 3]
        for r in range(rows):
            x = v[r]
            u0[g0[r]] += x
            u1[g1[r]] += x
            u2[g2[r]] += x
            u3[g3[r]] += x
        if use_fold:
            _product_fold(u0, buf, widths[b], col_starts[b], out)
            _product_fold(u1, buf, widths[b + 1], col_starts[b + 1], out)
            _product_fold(u2, buf, widths[b + 2], col_starts[b + 2], out)
            _product_fold(u3, buf, widths[b + 3], col_starts[b + 3], out)
        else:
            _product_dense(u0, widths[b], col_starts[b], out)
            _product_dense(u1, widths[b + 1], col_starts[b + 1], out)
            _product_dense(u2, widths[b + 2], col_starts[b + 2], out)
            _product_dense(u3, widths[b + 3], col_starts[b + 3], out)
        b += 4
    while b < b1:
        w = widths[b]
        for j in range(1 << w):
            u0[j] = 0.0
        g0 = buckets[b]
        for r in range(rows):
            u0[g0[r]] += v[r]
        if use_fold:
            _product_fold(u0, buf, w, col_starts[b], out)
        else:
            _product_dense(u0, w, col_starts[b], out)
        b += 1


def _run_index(v, idx: RsrIndex, use_fold: bool, out: np.ndarray) -> None:
    _run_blocks(v, idx._buckets, idx._widths, idx._col_starts,
                0, idx.block_count, 1 << idx.k, use_fold, out)


def multiply_rsr(v, idx: RsrIndex, variant: str = "rsrpp") -> np.ndarray:
    """v times the indexed binary matrix; block results concatenated in order."""
    use_fold = _use_fold(variant)
    v = as_vector(v)
    if v.shape[0] != idx.rows:
        raise ValueError(f"vector length {v.shape[0]} does not match {idx.rows} rows")
    out = np.empty(idx.cols, np.float64)
    _run_index(v, idx, use_fold, out)
    return out


def multiply_ternary(v, idx: TernaryIndex, variant: str = "rsrpp") -> np.ndarray:
    """v times the indexed ternary matrix: positive-half product minus negative-half."""
    use_fold = _use_fold(variant)
    v = as_vector(v)
    if v.shape[0] != idx.rows:
        raise ValueError(f"vector length {v.shape[0]} does not match {idx.rows} rows")
    pos = np.empty(idx.cols, np.float64)
    neg = np.empty(idx.cols, np.float64)
    _run_index(v, idx.positive, use_fold, pos)
    _run_index(v, idx.negative, use_fold, neg)
    return pos - neg


def multiply_parallel(v, idx, variant: str = "rsrpp", worker_count: int = 1) -> np.ndarray:
    """Blocks partitioned across workers, each writing a disjoint output slice."""
    use_fold = _use_fold(variant)
    if worker_count < 1:
        raise ValueError("worker_count must be at least 1")
    v = as_vector(v)
    if v.shape[0] != idx.rows:
        raise ValueError(f"vector length {v.shape[0]} does not match {idx.rows} rows")
    halves = [idx.positive, idx.negative] if isinstance(idx, TernaryIndex) else [idx]
    outs = [np.empty(idx.cols, np.float64) for _ in halves]
    tasks = []
    for half, out in zip(halves, outs):
        nblocks = half.block_count
        bounds = [i * nblocks // worker_count for i in range(worker_count + 1)]
        for lo, hi in zip(bounds, bounds[1:]):
            if lo < hi:
                tasks.append((half, lo, hi, out))
    if worker_count == 1:
        for half, lo, hi, out in tasks:
            _run_blocks(v, half._buckets, half._widths, half._col_starts,
                        lo, hi, 1 << half.k, use_fold, out)
    else:
        with ThreadPoolExecutor(max_workers=worker_count) as pool:
            futures = [
                pool.submit(_run_blocks, v, half._buckets, half._widths,
                            half._col_starts, lo, hi, 1 << half.k, use_fold, out)
                for half, lo, hi, out in tasks
            ]
            for fut in futures:
                fut.result()
    return outs[0] - outs[1] if len(outs) == 2 else outs[0]


# ---------------------------------------------------------------------------
# instrumented twins (pure Python, bitwise-identical, used to audit work bounds)
# ---------------------------------------------------------------------------

def segmented_sum_counted(v, block: BlockIndex) -> tuple[SegmentedSums, int]:
    """Gather-order segmented sums plus the number of accumulate steps."""
    v = as_vector(v)
    rows = block.permutation.shape[0]
    if v.shape[0] != rows:
        raise ValueError(f"vector length {v.shape[0]} does not match {rows} rows")
    seg = block.segmentation
    nseg = 1 << block.width
    sums = np.empty(nseg, np.float64)
    adds = 0
    for j in range(nseg):
        lo = int(seg[j])
        hi = int(seg[j + 1]) if j + 1 < nseg else rows
        acc = np.float64(0.0)
        for p in range(lo, hi):
            acc = acc + v[int(block.permutation[p])]
            adds += 1
        sums[j] = acc
    return SegmentedSums(block.width, sums), adds


def block_product_rsr_counted(u: SegmentedSums) -> tuple[np.ndarray, int]:
    """Dense block product plus its accumulate count (width * 2^width)."""
    nseg = 1 << u.width
    out = np.empty(u.width, np.float64)
    adds = 0
    for c in range(u.width):
        shift = u.width - 1 - c
        acc = np.float64(0.0)
        for j in range(nseg):
            acc = acc + u.sums[j] * ((j >> shift) & 1)
            adds += 1
        out[c] = acc
    return out, adds


def block_product_rsrpp_counted(u: SegmentedSums) -> tuple[np.ndarray, int]:
    """Fold block product plus its addition count (at most 2 * 2^width)."""
    out = np.empty(u.width, np.float64)
    buf = np.empty(max(1, (1 << u.width) >> 1), np.float64)
    adds = 0
    half = (1 << u.width) >> 1
    acc = np.float64(0.0)
    for t in range(half):
        acc = acc + u.sums[2 * t + 1]
        buf[t] = u.sums[2 * t] + u.sums[2 * t + 1]
        adds += 2
    out[u.width - 1] = acc
    size = half
    for c in range(u.width - 2, -1, -1):
        half = size >> 1
        acc = np.float64(0.0)
        for t in range(half):
            acc = acc + buf[2 * t + 1]
            buf[t] = buf[2 * t] + buf[2 * t + 1]
            adds += 2
        out[c] = acc
        size = half
    return out, adds


def multiply_counted(v, idx: RsrIndex, variant: str = "rsrpp") -> tuple[np.ndarray, int]:
    """Multiply via the public per-block ops, returning the total accumulate count."""
    use_fold = _use_fold(variant)
    out = np.empty(idx.cols, np.float64)
    total = 0
    for b, blk in enumerate(idx.blocks):
        sums, adds = segmented_sum_counted(v, blk)
        total += adds
        product, adds = (block_product_rsrpp_counted(sums) if use_fold
                         else block_product_rsr_counted(sums))
        total += adds
        start = int(idx._col_starts[b])
        out[start : start + blk.width] = product
    return out, total
