/** Ternary matrix views, validation, and the host-side dense product. */

import { ValidationError } from "./errors.js";

/** Contiguous row-major ternary matrix; entries must be -1, 0, or 1. */
export interface TernaryView {
  readonly rows: number;
  readonly cols: number;
  readonly data: Int8Array | Float64Array;
}

export type TernaryInput = TernaryView | ReadonlyArray<ReadonlyArray<number>>;

function checkAlphabet(data: Int8Array | Float64Array): void {
  for (let i = 0; i < data.length; i++) {
    const value = data[i] as number;
    if (value !== 0 && value !== 1 && value !== -1) {
      throw new ValidationError(`entry out of alphabet at flat index ${i}: ${value}`);
    }
  }
}

/** Normalize input to a validated Int8Array view without copying Int8 data. */
export function asTernary(input: TernaryInput): { rows: number; cols: number; data: Int8Array } {
  if (Array.isArray(input)) {
    const rows = input.length;
    if (rows < 1) throw new ValidationError("matrix must have at least one row");
    const first = input[0];
    if (!Array.isArray(first) || first.length < 1) {
      throw new ValidationError("matrix must have at least one column");
    }
    const cols = first.length;
    const data = new Int8Array(rows * cols);
    for (let i = 0; i < rows; i++) {
      const row = input[i] as ReadonlyArray<number>;
      if (row.length !== cols) {
        throw new ValidationError(`row ${i} has ${row.length} entries, expected ${cols}`);
      }
      for (let j = 0; j < cols; j++) {
        const value = row[j] as number;
        if (value !== 0 && value !== 1 && value !== -1) {
          throw new ValidationError(`entry out of alphabet at row ${i}, col ${j}: ${value}`);
        }
        data[i * cols + j] = value;
      }
    }
    return { rows, cols, data };
  }
  const view = input as TernaryView;
  if (!Number.isInteger(view.rows) || !Number.isInteger(view.cols)
      || view.rows < 1 || view.cols < 1) {
    throw new ValidationError("rows and cols must be positive integers");
  }
  if (view.data.length !== view.rows * view.cols) {
    throw new ValidationError(
      `buffer holds ${view.data.length} entries, expected ${view.rows * view.cols}`);
  }
  checkAlphabet(view.data);
  if (view.data instanceof Int8Array) {
    return { rows: view.rows, cols: view.cols, data: view.data };
  }
  return { rows: view.rows, cols: view.cols, data: Int8Array.from(view.data) };
}

export function asVector(values: Float64Array | ReadonlyArray<number>, rows: number): Float64Array {
  const v = values instanceof Float64Array ? values : Float64Array.from(values);
  if (v.length !== rows) {
    throw new ValidationError(`vector length ${v.length} does not match ${rows} rows`);
  }
  for (let i = 0; i < v.length; i++) {
    if (!Number.isFinite(v[i] as number)) {
      throw new ValidationError(`vector entry ${i} is not finite`);
    }
  }
  return v;
}

/** Plain dense v . A product; the comparison baseline and parity oracle. */
export function denseMatVec(v: Float64Array, matrix: TernaryView): Float64Array {
  const { rows, cols, data } = matrix;
  if (v.length !== rows) {
    throw new ValidationError(`vector length ${v.length} does not match ${rows} rows`);
  }
  const out = new Float64Array(cols);
  for (let i = 0; i < rows; i++) {
    const vi = v[i] as number;
    if (vi === 0) continue;
    const base = i * cols;
    for (let j = 0; j < cols; j++) {
      out[j] = (out[j] as number) + vi * (data[base + j] as number);
    }
  }
  return out;
}
