"""Bit-exact index serialization (.rsx) and space accounting."""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import FormatError
from .indexer import BlockIndex, RsrIndex, TernaryIndex, column_blocks

_MAGIC = b"RSX1"
_VERSION = 1
_KIND_BINARY = 1
_KIND_TERNARY = 2
_HEADER = struct.Struct("<4sHBQQHI")  # magic, version, kind, rows, cols, k, block_count
HEADER_BYTES = _HEADER.size


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _write_half(buf: bytearray, idx: RsrIndex) -> None:
    for blk in idx.blocks:
        buf += struct.pack("<H", blk.width)
        buf += blk.permutation.astype("<u4").tobytes()
        buf += blk.segmentation.astype("<u4").tobytes()


def save_index(idx, path) -> None:
    """Write an index; ternary files store the positive half then the negative."""
    if isinstance(idx, TernaryIndex):
        kind, halves = _KIND_TERNARY, (idx.positive, idx.negative)
    elif isinstance(idx, RsrIndex):
        kind, halves = _KIND_BINARY, (idx,)
    else:
        raise TypeError("expected RsrIndex or TernaryIndex")
    buf = bytearray()
    buf += _HEADER.pack(_MAGIC, _VERSION, kind, idx.rows, idx.cols, idx.k,
                        halves[0].block_count)
    for half in halves:
        _write_half(buf, half)
    Path(path).write_bytes(bytes(buf))


def _read_half(raw: bytes, offset: int, rows: int, cols: int, k: int,
               block_count: int) -> tuple[RsrIndex, int]:
    expected = column_blocks(cols, k)
    if block_count != len(expected):
        raise FormatError(f"block_count {block_count} does not match ceil(cols/k)")
    blocks = []
    for _, width in expected:
        if offset + 2 > len(raw):
            raise FormatError("truncated block header")
        (stored_width,) = struct.unpack_from("<H", raw, offset)
        offset += 2
        if stored_width != width:
            raise FormatError(f"block width {stored_width} does not partition {cols} columns")
        nbytes = 4 * rows + 4 * (1 << width)
        if offset + nbytes > len(raw):
            raise FormatError("truncated payload")
        perm = np.frombuffer(raw, "<u4", count=rows, offset=offset)
        seg = np.frombuffer(raw, "<u4", count=1 << width, offset=offset + 4 * rows)
        offset += nbytes
        blocks.append(BlockIndex(width, perm.astype(np.uint32), seg.astype(np.int64)))
    try:
        half = RsrIndex.from_blocks(rows, cols, k, blocks)
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(f"invariant violation: {exc}") from None
    return half, offset


def load_index(path):
    """Read and re-validate an index file; returns RsrIndex or TernaryIndex."""
    raw = Path(path).read_bytes()
    if len(raw) < HEADER_BYTES:
        raise FormatError("truncated header")
    magic, version, kind, rows, cols, k, block_count = _HEADER.unpack_from(raw)
    if magic != _MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != _VERSION:
        raise FormatError(f"unsupported version {version}")
    if kind not in (_KIND_BINARY, _KIND_TERNARY):
        raise FormatError(f"unknown index kind {kind}")
    if rows < 1 or cols < 1:
        raise FormatError("index dimensions must be at least 1x1")
    offset = HEADER_BYTES
    first, offset = _read_half(raw, offset, rows, cols, k, block_count)
    if kind == _KIND_BINARY:
        result = first
    else:
        second, offset = _read_half(raw, offset, rows, cols, k, block_count)
        result = TernaryIndex(first, second)
    if offset != len(raw):
        raise FormatError("trailing bytes")
    return result


# ---------------------------------------------------------------------------
# space accounting
# ---------------------------------------------------------------------------

@dataclass
class SpaceReport:
    index_entries: int
    dense_entries: int
    entry_ratio: float
    serialized_bytes: int
    dense_bytes_1B: int
    byte_ratio: float


def index_entries_formula(rows: int, cols: int, k: int) -> int:
    """Entry count of one binary-matrix index: sum over blocks of rows + 2^width."""
    return sum(rows + (1 << width) for _, width in column_blocks(cols, k))


def entry_ratio_formula(rows: int, cols: int, k: int) -> float:
    return index_entries_formula(rows, cols, k) / (rows * cols)


def _half_bytes(idx: RsrIndex) -> int:
    return sum(2 + 4 * idx.rows + 4 * (1 << blk.width) for blk in idx.blocks)


def space_report(idx) -> SpaceReport:
    """Entry and byte counts of an index against its dense matrix."""
    if isinstance(idx, TernaryIndex):
        halves = (idx.positive, idx.negative)
    elif isinstance(idx, RsrIndex):
        halves = (idx,)
    else:
        raise TypeError("expected RsrIndex or TernaryIndex")
    entries = sum(index_entries_formula(h.rows, h.cols, h.k) for h in halves)
    serialized = HEADER_BYTES + sum(_half_bytes(h) for h in halves)
    dense = idx.rows * idx.cols
    return SpaceReport(
        index_entries=entries,
        dense_entries=dense,
        entry_ratio=entries / dense,
        serialized_bytes=serialized,
        dense_bytes_1B=dense,
        byte_ratio=serialized / dense,
    )
