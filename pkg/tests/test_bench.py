"""Benchmark harness: record shapes, CSV/JSONL serialization, validation."""

import json

import pytest

import rsr
import rsr.bench as bench


class TestRunBench:
    def test_record_layout_all_methods(self):
        records = bench.run_bench([3, 4], reps=3, seed=5)
        assert [r.method for r in records] == [
            "preprocess", "naive", "rsr", "rsrpp",
            "preprocess", "naive", "rsr", "rsrpp",
        ]
        for rec in records[:4]:
            assert rec.n == rec.m == 8
        for rec in records[4:]:
            assert rec.n == rec.m == 16
        for rec in records:
            assert rec.min_ns > 0
            assert rec.min_ns <= rec.mean_ns
            assert rec.stddev_ns >= 0.0

    def test_auto_k_uses_tuned_width(self):
        records = bench.run_bench([3], reps=1)
        assert all(rec.k == rsr.optimal_k_rsrpp(8) for rec in records)

    def test_explicit_k(self):
        records = bench.run_bench([3], reps=1, k=2)
        assert all(rec.k == 2 for rec in records)

    def test_preprocess_record_shape(self):
        rec = bench.run_bench([3], reps=4)[0]
        assert rec.method == "preprocess"
        assert rec.reps == 1
        assert rec.workers == 1
        assert rec.stddev_ns == 0.0
        assert rec.mean_ns == rec.min_ns
        assert rec.speedup_vs_naive is None

    def test_naive_speedup_is_exactly_one(self):
        records = bench.run_bench([3], reps=3)
        naive = next(r for r in records if r.method == "naive")
        assert naive.speedup_vs_naive == 1.0
        for rec in records:
            if rec.method in ("rsr", "rsrpp"):
                assert rec.speedup_vs_naive is not None
                assert rec.speedup_vs_naive > 0

    def test_speedup_undefined_without_naive(self):
        records = bench.run_bench([3], methods=("rsrpp",), reps=2)
        assert [r.method for r in records] == ["preprocess", "rsrpp"]
        assert all(r.speedup_vs_naive is None for r in records)

    def test_naive_only_skips_preprocess(self):
        records = bench.run_bench([3], methods=("naive",), reps=2)
        assert [r.method for r in records] == ["naive"]

    def test_duplicate_methods_collapse(self):
        records = bench.run_bench([3], methods=("naive", "naive"), reps=1)
        assert [r.method for r in records] == ["naive"]

    def test_worker_column(self):
        records = bench.run_bench([3], reps=1, workers=2)
        by_method = {r.method: r for r in records}
        assert by_method["naive"].workers == 1
        assert by_method["rsr"].workers == 2
        assert by_method["rsrpp"].workers == 2
        assert by_method["preprocess"].workers == 1

    def test_binary_domain(self):
        records = bench.run_bench([3], reps=2, domain="binary", seed=9)
        assert [r.method for r in records] == ["preprocess", "naive", "rsr", "rsrpp"]

    def test_metadata_is_deterministic(self):
        def meta(records):
            return [(r.method, r.n, r.m, r.k, r.workers, r.reps) for r in records]
        a = bench.run_bench([3], reps=2, seed=7)
        b = bench.run_bench([3], reps=2, seed=7)
        assert meta(a) == meta(b)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError, match="unknown bench methods"):
            bench.run_bench([3], methods=("fast",))
        with pytest.raises(ValueError, match="nonempty"):
            bench.run_bench([3], methods=())
        with pytest.raises(ValueError, match="nonempty"):
            bench.run_bench([])
        with pytest.raises(ValueError, match="domain"):
            bench.run_bench([3], domain="complex")
        with pytest.raises(ValueError, match="reps"):
            bench.run_bench([3], reps=0)


@pytest.fixture(scope="module")
def records():
    return bench.run_bench([3], reps=2, seed=1)


class TestSerialization:

    def test_csv_header_and_shape(self, records):
        text = bench.to_csv(records)
        lines = text.splitlines()
        assert lines[0] == "method,n,m,k,workers,reps,mean_ns,stddev_ns,min_ns,speedup_vs_naive"
        assert len(lines) == len(records) + 1
        assert text.endswith("\n")

    def test_csv_fields_round_trip(self, records):
        lines = bench.to_csv(records).splitlines()[1:]
        for rec, line in zip(records, lines):
            fields = line.split(",")
            assert fields[0] == rec.method
            assert [int(f) for f in fields[1:6]] == [rec.n, rec.m, rec.k, rec.workers, rec.reps]
            assert float(fields[6]) == rec.mean_ns
            assert float(fields[7]) == rec.stddev_ns
            assert float(fields[8]) == rec.min_ns
            if rec.speedup_vs_naive is None:
                assert fields[9] == ""
            else:
                assert float(fields[9]) == rec.speedup_vs_naive

    def test_jsonl_round_trip(self, records):
        lines = bench.to_jsonl(records).splitlines()
        assert len(lines) == len(records)
        for rec, line in zip(records, lines):
            payload = json.loads(line)
            assert list(payload) == list(bench.CSV_FIELDS)
            assert payload["method"] == rec.method
            assert payload["speedup_vs_naive"] == rec.speedup_vs_naive
