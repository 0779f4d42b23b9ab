"""
The 6x6 worked example, end to end
==================================

Walks one small binary matrix through every stage of the pipeline: column
blocking, binary row ordering, full segmentation, segmented sums, and the
two block products.  Every printed value can be checked by hand.
"""

import numpy as np

import rsr

# the running example: six rows, six columns, block width k=2
B_DENSE = np.array(
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
B = rsr.BinaryMatrix.from_dense(B_DENSE)
v = np.array([3.0, 2.0, 4.0, 5.0, 9.0, 1.0])

print("matrix B:")
print(B_DENSE)
print("vector v:", v)

# step 1: the columns split into ceil(6/2) = 3 blocks of width 2
blocks = rsr.column_blocks(B.cols, 2)
print("\ncolumn blocks (start, width):", blocks)

# step 2: inside block 0 every row reads as a 2-bit integer, MSB first
values = [rsr.bucket_value(B, r, 0, 2) for r in range(B.rows)]
print("block-0 bucket values per row:", values)

# step 3: the binary row order sorts rows by bucket value, stably
perm = rsr.binary_row_order(B, blocks[0])
print("block-0 permutation sigma:", perm.tolist())

# step 4: the full segmentation marks where each bucket's rows begin
seg = rsr.full_segmentation(B, blocks[0], perm)
print("block-0 segmentation L:   ", seg.tolist())

# the index bundles all three blocks; block 0 matches what we just computed
idx = rsr.preprocess(B, 2)
assert list(idx.blocks[0].permutation) == list(perm)

# step 5: segmented sums pool v through the permutation, one sum per bucket
sums = rsr.segmented_sum(v, idx.blocks[0])
print("\nblock-0 segmented sums u:", sums.sums.tolist())

# step 6: the block product multiplies u against the implicit pattern whose
# j-th row is the binary expansion of j; both variants give the same answer
dense = rsr.block_product_rsr(sums)
fold = rsr.block_product_rsrpp(sums)
print("block-0 product (dense):", dense.tolist())
print("block-0 product (fold): ", fold.tolist())

# the fused multiply assembles all blocks and matches the naive oracle
result = rsr.multiply_rsr(v, idx)
print("\nv . B via index:", result.tolist())
print("v . B naive:    ", rsr.naive_multiply(v, B).tolist())
assert np.array_equal(result, rsr.naive_multiply(v, B))

# ternary matrices run the same machinery on the +1 and -1 halves
A = rsr.TernaryMatrix(B_DENSE.astype(np.int8) - np.eye(6, dtype=np.int8))
tidx = rsr.preprocess_ternary(A, 2)
print("\nternary A = B - I, v . A via index:", rsr.multiply_ternary(v, tidx).tolist())
assert np.array_equal(rsr.multiply_ternary(v, tidx), rsr.naive_multiply(v, A))

print("\nall stages agree with the naive oracle")
