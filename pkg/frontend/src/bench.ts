/** Benchmark driver: dense host baseline against the indexed kernels.
 *  Kernel samples come from the CLI's own multiply_ns clock, so process
 *  spawn and file IO never pollute the comparison. */

import { hrtime } from "node:process";

import { multiplyTimed, preprocess, type Handle } from "./bindings.js";
import { MismatchError, ValidationError } from "./errors.js";
import { denseMatVec, type TernaryView } from "./matrix.js";

export const CSV_FIELDS = [
  "method", "n", "m", "k", "workers", "reps",
  "mean_ns", "stddev_ns", "min_ns", "speedup_vs_naive",
] as const;

export interface BenchRecord {
  method: string;
  n: number;
  m: number;
  k: number;
  workers: number;
  reps: number;
  mean_ns: number;
  stddev_ns: number;
  min_ns: number;
  speedup_vs_naive: number | null;
}

/** Deterministic 32-bit generator (mulberry32); yields floats in [0, 1). */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function randomTernary(rows: number, cols: number, rand: () => number): TernaryView {
  const data = new Int8Array(rows * cols);
  for (let i = 0; i < data.length; i++) data[i] = Math.floor(rand() * 3) - 1;
  return { rows, cols, data };
}

/** Integer-valued vectors keep every float64 sum exact, any add order. */
export function integerVector(length: number, rand: () => number): Float64Array {
  const v = new Float64Array(length);
  for (let i = 0; i < length; i++) v[i] = Math.floor(rand() * 201) - 100;
  return v;
}

function stats(samples: number[]): { mean: number; stddev: number; min: number } {
  const mean = samples.reduce((acc, x) => acc + x, 0) / samples.length;
  const variance = samples.reduce((acc, x) => acc + (x - mean) ** 2, 0) / samples.length;
  return { mean, stddev: Math.sqrt(variance), min: Math.min(...samples) };
}

function record(
  method: string, n: number, m: number, k: number,
  samples: number[], naiveMean: number | null,
): BenchRecord {
  const { mean, stddev, min } = stats(samples);
  return {
    method, n, m, k, workers: 1, reps: samples.length,
    mean_ns: mean, stddev_ns: stddev, min_ns: min,
    speedup_vs_naive: naiveMean === null ? null : naiveMean / mean,
  };
}

function checkParity(expected: Float64Array, handle: Handle, v: Float64Array): void {
  for (const variant of ["rsr", "rsrpp"] as const) {
    const got = multiplyTimed(handle, v, variant).result;
    for (let j = 0; j < expected.length; j++) {
      if (got[j] !== expected[j]) {
        throw new MismatchError(
          `${variant} disagrees with the dense product at column ${j}`);
      }
    }
  }
}

/** Time preprocess, the dense baseline, and both kernel variants for each
 *  square size 2^e, e drawn from sizes.  Matrices are seeded ternary and
 *  vectors integer valued, so parity with the dense product is exact. */
export function bench(sizes: number[], reps = 10, seed = 0): BenchRecord[] {
  if (sizes.length === 0) throw new ValidationError("sizes must not be empty");
  const records: BenchRecord[] = [];
  for (const exponent of sizes) {
    const n = 2 ** exponent;
    const rand = mulberry32(seed + exponent);
    const matrix = randomTernary(n, n, rand);
    const v = integerVector(n, rand);

    const preStart = hrtime.bigint();
    const handle = preprocess(matrix);
    const preNs = Number(hrtime.bigint() - preStart);
    records.push(record("preprocess", n, n, handle.k, [preNs], null));

    const expected = denseMatVec(v, matrix);
    checkParity(expected, handle, v);

    const naiveSamples: number[] = [];
    for (let r = 0; r < reps; r++) {
      const start = hrtime.bigint();
      denseMatVec(v, matrix);
      naiveSamples.push(Number(hrtime.bigint() - start));
    }
    const naive = record("naive", n, n, handle.k, naiveSamples, null);
    naive.speedup_vs_naive = 1.0;
    records.push(naive);

    for (const variant of ["rsr", "rsrpp"] as const) {
      const samples: number[] = [];
      for (let r = 0; r < reps; r++) {
        samples.push(multiplyTimed(handle, v, variant).multiplyNs);
      }
      records.push(record(variant, n, n, handle.k, samples, naive.mean_ns));
    }
  }
  return records;
}

/** Same column layout as the CLI's bench CSV; null prints as empty. */
export function toCsv(records: BenchRecord[]): string {
  const lines = [CSV_FIELDS.join(",")];
  for (const rec of records) {
    lines.push(CSV_FIELDS.map((f) => {
      const value = rec[f];
      return value === null ? "" : String(value);
    }).join(","));
  }
  return lines.join("\n") + "\n";
}
