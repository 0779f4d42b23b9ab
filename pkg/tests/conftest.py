"""Shared fixtures: the worked 6x6 example and seeded random case helpers."""

import numpy as np
import pytest

import rsr

# 6x6 binary matrix used throughout as the worked example, with v and v . B
# re-derived by brute force before the kernels were written.
B6_DENSE = np.array(
    [
        [0, 1, 1, 1, 0, 1],
        [0, 0, 0, 1, 1, 1],
        [0, 1, 1, 1, 1, 0],
        [1, 1, 0, 0, 1, 0],
        [0, 0, 1, 1, 0, 1],
        [0, 0, 0, 0, 1, 0],
    ],
    np.uint8,
)
V6 = np.array([3.0, 2.0, 4.0, 5.0, 9.0, 1.0])
V6_PRODUCT = np.array([5.0, 12.0, 16.0, 18.0, 12.0, 14.0])

BLOCK0_PERM = np.array([1, 4, 5, 0, 2, 3], np.uint32)
BLOCK0_SEG = np.array([0, 3, 5, 5], np.int64)
BLOCK0_SUMS = np.array([12.0, 7.0, 0.0, 5.0])


@pytest.fixture(scope="session")
def b6() -> rsr.BinaryMatrix:
    return rsr.BinaryMatrix.from_dense(B6_DENSE)


@pytest.fixture(scope="session")
def a6() -> rsr.TernaryMatrix:
    return rsr.TernaryMatrix(B6_DENSE.astype(np.int8))


def random_ternary(rng, rows, cols) -> rsr.TernaryMatrix:
    return rsr.TernaryMatrix(rng.integers(-1, 2, size=(rows, cols), dtype=np.int8))


def random_binary(rng, rows, cols) -> rsr.BinaryMatrix:
    return rsr.BinaryMatrix.from_dense(rng.integers(0, 2, size=(rows, cols), dtype=np.uint8))


def integer_vector(rng, n) -> np.ndarray:
    return rng.integers(-100, 101, size=n).astype(np.float64)


def dense_oracle(v, dense) -> np.ndarray:
    """Independent product oracle; exact when v and the matrix are integer-valued."""
    return v @ dense.astype(np.float64)


def sweep_k(rows, cap=8):
    return range(1, min(cap, max(1, int(rows).bit_length() - 1)) + 1)


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the jitted kernels once so timed tests measure steady state."""
    rng = np.random.default_rng(7)
    A = random_ternary(rng, 8, 8)
    B = random_binary(rng, 8, 8)
    v = integer_vector(rng, 8)
    for k in (1, 2):
        tidx = rsr.preprocess_ternary(A, k)
        bidx = rsr.preprocess(B, k)
        for variant in ("rsr", "rsrpp"):
            rsr.multiply_ternary(v, tidx, variant)
            rsr.multiply_rsr(v, bidx, variant)
            rsr.multiply_parallel(v, tidx, variant, 2)
        rsr.segmented_sum(v, bidx.blocks[0])
    rsr.naive_multiply(v, A)
    rsr.naive_multiply(v, B)
    u = rsr.segmented_sum(v, rsr.preprocess(B, 2).blocks[0])
    rsr.block_product_rsr(u)
    rsr.block_product_rsrpp(u)
