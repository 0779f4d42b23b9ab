"""Value types, decomposition, and the naive oracle."""

import numpy as np
import pytest

import rsr
from conftest import B6_DENSE, V6, V6_PRODUCT, dense_oracle, integer_vector, random_ternary


class TestTernaryMatrix:
    def test_accepts_ternary_entries(self):
        A = rsr.TernaryMatrix(np.array([[1, -1], [0, 1]], np.int8))
        assert (A.rows, A.cols) == (2, 2)
        assert A.entries.dtype == np.int8

    def test_accepts_float_entries_with_ternary_values(self):
        A = rsr.TernaryMatrix(np.array([[1.0, -1.0], [0.0, 1.0]]))
        assert np.array_equal(A.entries, [[1, -1], [0, 1]])

    @pytest.mark.parametrize("bad", [2, -2, 0.5, 100])
    def test_rejects_out_of_alphabet(self, bad):
        with pytest.raises(ValueError):
            rsr.TernaryMatrix(np.array([[1, bad], [0, 1]], np.float64))

    def test_rejects_empty_and_non_2d(self):
        with pytest.raises(ValueError):
            rsr.TernaryMatrix(np.zeros((0, 3), np.int8))
        with pytest.raises(ValueError):
            rsr.TernaryMatrix(np.zeros(4, np.int8))

    def test_entries_immutable(self):
        A = rsr.TernaryMatrix(np.zeros((2, 2), np.int8))
        with pytest.raises(ValueError):
            A.entries[0, 0] = 1


class TestBinaryMatrix:
    def test_dense_round_trip_unaligned(self):
        rng = np.random.default_rng(0)
        dense = rng.integers(0, 2, size=(33, 65), dtype=np.uint8)
        B = rsr.BinaryMatrix.from_dense(dense)
        assert B.bits.shape == (33, 9)
        assert np.array_equal(B.to_dense(), dense)

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            rsr.BinaryMatrix.from_dense(np.array([[0, 2]]))

    def test_rejects_nonzero_padding(self):
        bits = np.array([[0b10000001]], np.uint8)  # 7 cols, last bit is padding
        with pytest.raises(ValueError):
            rsr.BinaryMatrix(1, 7, bits)

    def test_msb_first_packing(self):
        B = rsr.BinaryMatrix.from_dense(np.array([[1, 0, 0, 0, 0, 0, 0, 1]]))
        assert B.bits[0, 0] == 0b10000001


class TestDecompose:
    def test_case_split(self):
        A = rsr.TernaryMatrix(np.array([[1, -1], [0, 1]], np.int8))
        pair = rsr.decompose_ternary(A)
        assert np.array_equal(pair.positive.to_dense(), [[1, 0], [0, 1]])
        assert np.array_equal(pair.negative.to_dense(), [[0, 1], [0, 0]])

    def test_all_zero(self):
        pair = rsr.decompose_ternary(rsr.TernaryMatrix(np.zeros((3, 3), np.int8)))
        assert not pair.positive.to_dense().any()
        assert not pair.negative.to_dense().any()

    def test_binary_valued_matrix(self, a6):
        pair = rsr.decompose_ternary(a6)
        assert np.array_equal(pair.positive.to_dense(), B6_DENSE)
        assert not pair.negative.to_dense().any()

    def test_reconstruction_and_disjoint_support(self):
        rng = np.random.default_rng(1)
        for _ in range(25):
            rows, cols = rng.integers(1, 40, size=2)
            A = random_ternary(rng, rows, cols)
            pos, neg = rsr.decompose_ternary(A)
            p, n = pos.to_dense().astype(np.int8), neg.to_dense().astype(np.int8)
            assert np.array_equal(p - n, A.entries)
            assert not (p & n).any()


class TestNaiveMultiply:
    def test_worked_example_binary(self, b6):
        assert np.array_equal(rsr.naive_multiply(V6, b6), V6_PRODUCT)

    def test_worked_example_ternary(self, a6):
        assert np.array_equal(rsr.naive_multiply(V6, a6), V6_PRODUCT)

    def test_zero_vector(self, b6):
        assert np.array_equal(rsr.naive_multiply(np.zeros(6), b6), np.zeros(6))

    def test_ones_vector_gives_column_popcounts(self, b6):
        expected = B6_DENSE.sum(axis=0).astype(np.float64)
        assert np.array_equal(rsr.naive_multiply(np.ones(6), b6), expected)

    def test_matches_dense_oracle_exactly(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            rows, cols = rng.integers(1, 48, size=2)
            A = random_ternary(rng, rows, cols)
            v = integer_vector(rng, rows)
            assert np.array_equal(rsr.naive_multiply(v, A), dense_oracle(v, A.entries))

    def test_binary_matches_dense_oracle(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            rows, cols = rng.integers(1, 48, size=2)
            dense = rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)
            v = integer_vector(rng, rows)
            B = rsr.BinaryMatrix.from_dense(dense)
            assert np.array_equal(rsr.naive_multiply(v, B), dense_oracle(v, dense))

    def test_linearity(self):
        rng = np.random.default_rng(4)
        A = random_ternary(rng, 32, 24)
        u = integer_vector(rng, 32)
        v = integer_vector(rng, 32)
        lhs = rsr.naive_multiply(2.0 * u + 3.0 * v, A)
        rhs = 2.0 * rsr.naive_multiply(u, A) + 3.0 * rsr.naive_multiply(v, A)
        assert np.array_equal(lhs, rhs)  # exact in the small-integer regime
        uf = rng.standard_normal(32)
        vf = rng.standard_normal(32)
        lhs = rsr.naive_multiply(0.5 * uf + 0.25 * vf, A)
        rhs = 0.5 * rsr.naive_multiply(uf, A) + 0.25 * rsr.naive_multiply(vf, A)
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12)

    def test_dimension_mismatch(self, b6):
        with pytest.raises(ValueError):
            rsr.naive_multiply(np.ones(5), b6)

    @pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
    def test_rejects_non_finite(self, b6, bad):
        v = np.ones(6)
        v[3] = bad
        with pytest.raises(ValueError):
            rsr.naive_multiply(v, b6)


class TestAsVector:
    def test_accepts_lists(self):
        assert rsr.as_vector([1, 2, 3]).dtype == np.float64

    def test_rejects_empty_and_2d(self):
        with pytest.raises(ValueError):
            rsr.as_vector([])
        with pytest.raises(ValueError):
            rsr.as_vector(np.zeros((2, 2)))
