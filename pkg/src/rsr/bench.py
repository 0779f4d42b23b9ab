"""Benchmark harness: seeded matrix generation, timed runs, CSV/JSONL records."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np

from .core import BinaryMatrix, TernaryMatrix, naive_multiply
from .indexer import optimal_k_rsr, optimal_k_rsrpp, preprocess, preprocess_ternary
from .kernels import multiply_parallel

CSV_FIELDS = ("method", "n", "m", "k", "workers", "reps",
              "mean_ns", "stddev_ns", "min_ns", "speedup_vs_naive")
METHODS = ("naive", "rsr", "rsrpp")
WARMUP_REPS = 3


@dataclass
class BenchRecord:
    method: str
    n: int
    m: int
    k: int
    workers: int
    reps: int
    mean_ns: float
    stddev_ns: float
    min_ns: float
    speedup_vs_naive: float | None


def _time_reps(fn, reps: int, warmup: int) -> list[int]:
    for _ in range(warmup):
        fn()
    samples = []
    for _ in range(reps):
        start = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - start)
    return samples


def _record(method, n, m, k, workers, reps, samples, naive_mean=None) -> BenchRecord:
    mean = float(np.mean(samples))
    return BenchRecord(
        method=method, n=n, m=m, k=k, workers=workers, reps=reps,
        mean_ns=mean,
        stddev_ns=float(np.std(samples)),
        min_ns=float(np.min(samples)),
        speedup_vs_naive=None if naive_mean is None else naive_mean / mean,
    )


def run_bench(size_exponents, methods=METHODS, reps: int = 10, k="auto",
              workers: int = 1, seed: int = 0, domain: str = "ternary",
              warmup: int = WARMUP_REPS) -> list[BenchRecord]:
    """Per size 2^e: generate matrix and vector, preprocess, time each method.

    Preprocessing is timed separately (method=preprocess record) and excluded
    from inference timing.  Records aggregate over reps: one per method per size.
    """
    methods = list(dict.fromkeys(methods))
    unknown = set(methods) - set(METHODS)
    if unknown:
        raise ValueError(f"unknown bench methods: {sorted(unknown)}")
    if not methods:
        raise ValueError("methods must be nonempty")
    if not size_exponents:
        raise ValueError("sizes must be nonempty")
    if domain not in ("ternary", "binary"):
        raise ValueError("domain must be ternary or binary")
    if reps < 1:
        raise ValueError("reps must be at least 1")
    records = []
    for exponent in size_exponents:
        n = m = 1 << int(exponent)
        rng = np.random.default_rng([seed, int(exponent)])
        if domain == "ternary":
            matrix = TernaryMatrix(rng.integers(-1, 2, size=(n, m), dtype=np.int8))
        else:
            matrix = BinaryMatrix.from_dense(rng.integers(0, 2, size=(n, m), dtype=np.uint8))
        v = rng.integers(-100, 101, size=n).astype(np.float64)
        kk = optimal_k_rsrpp(n) if k == "auto" else int(k)

        index = None
        if "rsr" in methods or "rsrpp" in methods:
            start = time.perf_counter_ns()
            if domain == "ternary":
                index = preprocess_ternary(matrix, kk)
            else:
                index = preprocess(matrix, kk)
            elapsed = time.perf_counter_ns() - start
            records.append(_record("preprocess", n, m, kk, 1, 1, [elapsed]))

        reference = naive_multiply(v, matrix)
        runs = {}
        for method in methods:
            if method == "naive":
                runs[method] = lambda v=v, matrix=matrix: naive_multiply(v, matrix)
            else:
                runs[method] = lambda v=v, index=index, variant=method: (
                    multiply_parallel(v, index, variant, workers))
                if not np.array_equal(runs[method](), reference):
                    raise RuntimeError(f"{method} disagrees with naive at n={n}")

        samples = {method: _time_reps(fn, reps, warmup) for method, fn in runs.items()}
        naive_mean = float(np.mean(samples["naive"])) if "naive" in samples else None
        for method in methods:
            records.append(_record(
                method, n, m, kk, 1 if method == "naive" else workers,
                reps, samples[method], naive_mean))
    return records


def _field_str(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_csv(records) -> str:
    lines = [",".join(CSV_FIELDS)]
    for rec in records:
        lines.append(",".join(_field_str(getattr(rec, f)) for f in CSV_FIELDS))
    return "\n".join(lines) + "\n"


def to_jsonl(records) -> str:
    lines = []
    for rec in records:
        lines.append(json.dumps({f: getattr(rec, f) for f in CSV_FIELDS}))
    return "\n".join(lines) + "\n"
