"""Matrix and vector file formats: .tmx text, .tpk/.bpk packed, .vecf64 vectors."""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .core import BinaryMatrix, FormatError, Matrix, TernaryMatrix, as_vector

_MAGIC_TPK = b"TPK1"
_MAGIC_BPK = b"BPK1"
_MAGIC_VEC = b"VF64"


def _infer_format(path) -> str:
    suffix = Path(path).suffix.lstrip(".").lower()
    if suffix in ("tmx", "tpk", "bpk"):
        return suffix
    raise ValueError(f"cannot infer matrix format from suffix {suffix!r}")


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def _save_tmx(mat: Matrix, path) -> None:
    dense = mat.entries if isinstance(mat, TernaryMatrix) else mat.to_dense().astype(np.int8)
    lines = [f"{mat.rows} {mat.cols}"]
    lines.extend(" ".join(str(int(e)) for e in row) for row in dense)
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def _load_tmx(path, prefer: str) -> Matrix:
    text = Path(path).read_text(encoding="ascii")
    lines = text.splitlines()
    if not lines:
        raise FormatError("malformed header")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError("malformed header")
    try:
        rows, cols = int(head[0]), int(head[1])
    except ValueError:
        raise FormatError("malformed header") from None
    if rows < 1 or cols < 1:
        raise FormatError("malformed header")
    if len(lines) != rows + 1:
        raise FormatError(f"expected {rows} rows, found {len(lines) - 1}")
    dense = np.empty((rows, cols), np.int8)
    for i, line in enumerate(lines[1:]):
        tokens = line.split()
        if len(tokens) != cols:
            raise FormatError(f"row {i}: expected {cols} entries, found {len(tokens)}")
        for j, tok in enumerate(tokens):
            if tok not in ("-1", "0", "1"):
                raise FormatError(f"row {i}: entry out of alphabet: {tok!r}")
            dense[i, j] = int(tok)
    has_negative = bool((dense < 0).any())
    if prefer == "binary":
        if has_negative:
            raise FormatError("entry out of alphabet: -1 in binary matrix")
        return BinaryMatrix.from_dense(dense)
    if prefer == "ternary":
        return TernaryMatrix(dense)
    return TernaryMatrix(dense) if has_negative else BinaryMatrix.from_dense(dense)


# ---------------------------------------------------------------------------
# packed formats
# ---------------------------------------------------------------------------

def _read_packed_header(raw: bytes, magic: bytes) -> tuple[int, int]:
    if len(raw) < 20:
        raise FormatError("malformed header")
    if raw[:4] != magic:
        raise FormatError(f"malformed header: bad magic {raw[:4]!r}")
    rows, cols = struct.unpack_from("<QQ", raw, 4)
    if rows < 1 or cols < 1:
        raise FormatError("malformed header")
    return rows, cols


def _save_tpk(mat: TernaryMatrix, path) -> None:
    # 2 bits per entry, MSB-first pairs: 00=0, 01=+1, 10=-1
    codes = np.zeros((mat.rows, mat.cols), np.uint8)
    codes[mat.entries == 1] = 1
    codes[mat.entries == -1] = 2
    row_bytes = (mat.cols + 3) // 4
    padded = np.zeros((mat.rows, row_bytes * 4), np.uint8)
    padded[:, : mat.cols] = codes
    quads = padded.reshape(mat.rows, row_bytes, 4)
    packed = (quads[..., 0] << 6) | (quads[..., 1] << 4) | (quads[..., 2] << 2) | quads[..., 3]
    with open(path, "wb") as fh:
        fh.write(_MAGIC_TPK)
        fh.write(struct.pack("<QQ", mat.rows, mat.cols))
        fh.write(packed.astype(np.uint8).tobytes())


def _load_tpk(path) -> TernaryMatrix:
    raw = Path(path).read_bytes()
    rows, cols = _read_packed_header(raw, _MAGIC_TPK)
    row_bytes = (cols + 3) // 4
    expected = 20 + rows * row_bytes
    if len(raw) < expected:
        raise FormatError("truncated payload")
    if len(raw) > expected:
        raise FormatError("trailing bytes")
    packed = np.frombuffer(raw, np.uint8, offset=20).reshape(rows, row_bytes)
    codes = np.empty((rows, row_bytes * 4), np.uint8)
    codes[:, 0::4] = packed >> 6
    codes[:, 1::4] = (packed >> 4) & 3
    codes[:, 2::4] = (packed >> 2) & 3
    codes[:, 3::4] = packed & 3
    if (codes[:, :cols] == 3).any():
        raise FormatError("entry out of alphabet: code 11")
    if codes[:, cols:].any():
        raise FormatError("padding bits must be zero")
    dense = codes[:, :cols].astype(np.int8)
    dense[dense == 2] = -1
    return TernaryMatrix(dense)


def _save_bpk(mat: BinaryMatrix, path) -> None:
    with open(path, "wb") as fh:
        fh.write(_MAGIC_BPK)
        fh.write(struct.pack("<QQ", mat.rows, mat.cols))
        fh.write(mat.bits.tobytes())


def _load_bpk(path) -> BinaryMatrix:
    raw = Path(path).read_bytes()
    rows, cols = _read_packed_header(raw, _MAGIC_BPK)
    row_bytes = (cols + 7) // 8
    expected = 20 + rows * row_bytes
    if len(raw) < expected:
        raise FormatError("truncated payload")
    if len(raw) > expected:
        raise FormatError("trailing bytes")
    bits = np.frombuffer(raw, np.uint8, offset=20).reshape(rows, row_bytes)
    pad = row_bytes * 8 - cols
    if pad and np.any(bits[:, -1] & ((1 << pad) - 1)):
        raise FormatError("padding bits must be zero")
    return BinaryMatrix(rows, cols, bits)


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------

def save_matrix(mat: Matrix, path, format: str | None = None) -> None:
    """Write a matrix in the format given or inferred from the path suffix."""
    fmt = format or _infer_format(path)
    if fmt == "tmx":
        _save_tmx(mat, path)
    elif fmt == "tpk":
        if not isinstance(mat, TernaryMatrix):
            raise ValueError("tpk stores ternary matrices")
        _save_tpk(mat, path)
    elif fmt == "bpk":
        if not isinstance(mat, BinaryMatrix):
            raise ValueError("bpk stores binary matrices")
        _save_bpk(mat, path)
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")


def load_matrix(mat_path, format: str | None = None, *, prefer: str = "auto") -> Matrix:
    """Read a matrix; .tmx files with only {0,1} load as binary unless prefer says otherwise."""
    if prefer not in ("auto", "ternary", "binary"):
        raise ValueError("prefer must be auto, ternary, or binary")
    fmt = format or _infer_format(mat_path)
    if fmt == "tmx":
        return _load_tmx(mat_path, prefer)
    if fmt == "tpk":
        return _load_tpk(mat_path)
    if fmt == "bpk":
        return _load_bpk(mat_path)
    raise ValueError(f"unknown matrix format {fmt!r}")


def write_vector(v, path) -> None:
    v = as_vector(v)
    with open(path, "wb") as fh:
        fh.write(_MAGIC_VEC)
        fh.write(struct.pack("<Q", v.shape[0]))
        fh.write(v.astype("<f8").tobytes())


def read_vector(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    if len(raw) < 12 or raw[:4] != _MAGIC_VEC:
        raise FormatError("malformed header")
    (length,) = struct.unpack_from("<Q", raw, 4)
    if length < 1:
        raise FormatError("malformed header")
    expected = 12 + 8 * length
    if len(raw) < expected:
        raise FormatError("truncated payload")
    if len(raw) > expected:
        raise FormatError("trailing bytes")
    values = np.frombuffer(raw, "<f8", offset=12).astype(np.float64)
    if not np.isfinite(values).all():
        raise FormatError("vector entries must be finite")
    return values
