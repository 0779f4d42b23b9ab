"""Sub-quadratic vector by binary/ternary matrix multiplication.

A fixed matrix with entries in {-1, 0, +1} is preprocessed once into a
permutation+segmentation index per column block; multiplication then runs as
segmented sums over the input vector followed by cheap per-block products,
skipping the redundant additions a dense product repeats across equal rows.
"""

from .core import (
    BinaryMatrix,
    DecompositionPair,
    FormatError,
    TernaryMatrix,
    as_vector,
    decompose_ternary,
    naive_multiply,
)
from .matio import load_matrix, read_vector, save_matrix, write_vector
from .indexer import (
    BlockIndex,
    RsrIndex,
    TernaryIndex,
    binary_row_order,
    bucket_value,
    column_blocks,
    full_segmentation,
    max_k_for_rows,
    optimal_k_rsr,
    optimal_k_rsr_bisect,
    optimal_k_rsrpp,
    optimal_k_rsrpp_bisect,
    preprocess,
    preprocess_ternary,
    reconstruct_matrix,
)
from .kernels import (
    SegmentedSums,
    bin_pattern_bit,
    block_product_rsr,
    block_product_rsrpp,
    multiply_parallel,
    multiply_rsr,
    multiply_ternary,
    segmented_sum,
)
from .store import (
    SpaceReport,
    entry_ratio_formula,
    index_entries_formula,
    load_index,
    save_index,
    space_report,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryMatrix",
    "BlockIndex",
    "DecompositionPair",
    "FormatError",
    "RsrIndex",
    "SegmentedSums",
    "SpaceReport",
    "TernaryIndex",
    "TernaryMatrix",
    "as_vector",
    "bin_pattern_bit",
    "binary_row_order",
    "block_product_rsr",
    "block_product_rsrpp",
    "bucket_value",
    "column_blocks",
    "decompose_ternary",
    "entry_ratio_formula",
    "full_segmentation",
    "index_entries_formula",
    "load_index",
    "load_matrix",
    "max_k_for_rows",
    "multiply_parallel",
    "multiply_rsr",
    "multiply_ternary",
    "naive_multiply",
    "optimal_k_rsr",
    "optimal_k_rsr_bisect",
    "optimal_k_rsrpp",
    "optimal_k_rsrpp_bisect",
    "preprocess",
    "preprocess_ternary",
    "read_vector",
    "reconstruct_matrix",
    "save_index",
    "save_matrix",
    "segmented_sum",
    "space_report",
    "write_vector",
    "__version__",
]
