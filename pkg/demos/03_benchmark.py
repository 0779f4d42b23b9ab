"""
Timing the kernels against the naive baseline
=============================================

Runs the benchmark harness at a few desk-friendly sizes and prints the CSV.
The same harness backs the command line:

    rsr bench --sizes 11,12,13 --reps 10 --domain binary

Block width k is tuned per size unless given explicitly; the preprocess row
records the one-time indexing cost, which inference timings exclude.
"""

import numpy as np

import rsr
from rsr.bench import run_bench, to_csv

# how the tuned block width grows with matrix size, for both cost models
print("tuned k per size:")
for exponent in range(8, 17):
    n = 1 << exponent
    print(f"  n=2^{exponent:<3d} rsr k={rsr.optimal_k_rsr(n):<3d}"
          f" rsrpp k={rsr.optimal_k_rsrpp(n)}")

# a small sweep; raise the exponents for steadier numbers on a quiet machine
print("\nbinary domain, sizes 2^9..2^11:")
records = run_bench([9, 10, 11], reps=5, domain="binary", seed=0)
print(to_csv(records), end="")

rsrpp = {r.n: r for r in records if r.method == "rsrpp"}
print("\nrsrpp speedup vs naive:")
for n, rec in sorted(rsrpp.items()):
    print(f"  n={n:<6d} {rec.speedup_vs_naive:.2f}x")

# the work model behind the speedup: counted additions per multiply
from rsr.kernels import multiply_counted

n = 1 << 11
rng = np.random.default_rng(1)
B = rsr.BinaryMatrix.from_dense(rng.integers(0, 2, size=(n, n), dtype=np.uint8))
v = rng.integers(-100, 101, size=n).astype(np.float64)
idx = rsr.preprocess(B, rsr.optimal_k_rsrpp(n))
_, adds = multiply_counted(v, idx, "rsrpp")
print(f"\ncounted additions at n=2^11: {adds} vs dense n*m = {n * n}"
      f" ({adds / (n * n):.2%})")
