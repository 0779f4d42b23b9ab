"""
Matrices, vectors, and indexes on disk
======================================

Round-trips each file format and reads back the space report.  The same
operations are available from the command line:

    rsr preprocess weights.tmx weights.rsx --k auto
    rsr multiply weights.rsx input.vecf64 output.vecf64 --workers 4
    rsr verify weights.tmx
"""

import tempfile
from pathlib import Path

import numpy as np

import rsr

rng = np.random.default_rng(7)
A = rsr.TernaryMatrix(rng.integers(-1, 2, size=(64, 48), dtype=np.int8))
v = rng.integers(-100, 101, size=64).astype(np.float64)

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)

    # .tmx is the human-readable text format: a header line, then the rows
    rsr.save_matrix(A, tmp / "a.tmx")
    print("a.tmx starts with:")
    print("\n".join((tmp / "a.tmx").read_text().splitlines()[:3]))
    assert rsr.load_matrix(tmp / "a.tmx") == A

    # .tpk packs ternary entries at 2 bits each; .bpk packs binary at 1 bit
    rsr.save_matrix(A, tmp / "a.tpk")
    text_size = (tmp / "a.tmx").stat().st_size
    packed_size = (tmp / "a.tpk").stat().st_size
    print(f"\ntext {text_size} bytes vs packed {packed_size} bytes")
    assert rsr.load_matrix(tmp / "a.tpk") == A

    # .vecf64 holds the input and output vectors, bit-exact
    rsr.write_vector(v, tmp / "v.vecf64")
    assert np.array_equal(rsr.read_vector(tmp / "v.vecf64"), v)

    # preprocessing once produces the .rsx index used for every multiply
    k = rsr.optimal_k_rsrpp(A.rows)
    index = rsr.preprocess_ternary(A, k)
    rsr.save_index(index, tmp / "a.rsx")
    loaded = rsr.load_index(tmp / "a.rsx")
    print(f"\nindex at k={k}: {loaded.positive.block_count} blocks per half")

    # the report compares index entries and bytes against the dense matrix
    report = rsr.space_report(loaded)
    print(f"entries {report.index_entries} vs dense {report.dense_entries}"
          f" (ratio {report.entry_ratio:.3f})")
    print(f"file bytes {report.serialized_bytes}"
          f" (ratio {report.byte_ratio:.3f} vs 1-byte dense entries)")

    # a loaded index multiplies bit-for-bit like the one in memory
    assert np.array_equal(rsr.multiply_ternary(v, loaded),
                          rsr.multiply_ternary(v, index))
    assert np.array_equal(rsr.multiply_ternary(v, loaded),
                          rsr.naive_multiply(v, A))

print("\nround-trips complete; loaded index matches the naive oracle")
