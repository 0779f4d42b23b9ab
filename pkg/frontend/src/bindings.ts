/** The five public operations: preprocess, multiply, save, load (and bench
 *  in bench.ts).  Handles own an index file in the scratch directory; the
 *  matrix itself never crosses back once preprocessing is done. */

import { copyFileSync, statSync, unlinkSync } from "node:fs";

import { ValidationError } from "./errors.js";
import { readRsxHeader, readVecF64, writeTpk, writeVecF64 } from "./format.js";
import { asTernary, asVector, type TernaryInput } from "./matrix.js";
import { lastJsonLine, runCli, tempPath } from "./transport.js";

export type Variant = "rsr" | "rsrpp";

export interface SpaceReport {
  index_entries: number;
  dense_entries: number;
  entry_ratio: number;
  serialized_bytes: number;
  dense_bytes_1B: number;
  byte_ratio: number;
}

/** Opaque index handle; only the metadata is readable from the host. */
export class Handle {
  /** @internal */
  readonly indexPath: string;

  constructor(
    indexPath: string,
    readonly kind: "binary" | "ternary",
    readonly rows: number,
    readonly cols: number,
    readonly k: number,
    readonly blockCount: number,
    readonly spaceReport: SpaceReport,
  ) {
    this.indexPath = indexPath;
  }
}

function checkVariant(variant: string): Variant {
  if (variant !== "rsr" && variant !== "rsrpp") {
    throw new ValidationError(`variant must be rsr or rsrpp, got ${JSON.stringify(variant)}`);
  }
  return variant;
}

/** Entry count and byte accounting recomputed host-side from the header. */
function reportFromHeader(path: string): SpaceReport {
  const { kind, rows, cols, k } = readRsxHeader(path);
  const halves = kind === "ternary" ? 2 : 1;
  const full = Math.floor(cols / k);
  const rem = cols % k;
  const perHalf = full * (rows + 2 ** k) + (rem > 0 ? rows + 2 ** rem : 0);
  const entries = halves * perHalf;
  const dense = rows * cols;
  const bytes = statSync(path).size;
  return {
    index_entries: entries,
    dense_entries: dense,
    entry_ratio: entries / dense,
    serialized_bytes: bytes,
    dense_bytes_1B: dense,
    byte_ratio: bytes / dense,
  };
}

function handleFor(indexPath: string, spaceReport?: SpaceReport): Handle {
  const header = readRsxHeader(indexPath);
  return new Handle(
    indexPath, header.kind, header.rows, header.cols, header.k,
    header.blockCount, spaceReport ?? reportFromHeader(indexPath));
}

/** Build an index from a ternary matrix; k="auto" lets the CLI tune it. */
export function preprocess(array: TernaryInput, k: number | "auto" = "auto"): Handle {
  const matrix = asTernary(array);
  if (k !== "auto" && (!Number.isInteger(k) || k < 1)) {
    throw new ValidationError(`k must be a positive integer or "auto", got ${k}`);
  }
  const matrixPath = tempPath(".tpk");
  const indexPath = tempPath(".rsx");
  writeTpk(matrix, matrixPath);
  try {
    const result = runCli(["preprocess", matrixPath, indexPath, "--k", String(k)]);
    const report = lastJsonLine(result.stdout) as unknown as SpaceReport;
    return handleFor(indexPath, report);
  } finally {
    unlinkSync(matrixPath);
  }
}

/** @internal multiply that also reports the kernel time the CLI measured. */
export function multiplyTimed(
  handle: Handle,
  vector: Float64Array | ReadonlyArray<number>,
  variant: string = "rsrpp",
): { result: Float64Array; multiplyNs: number } {
  const chosen = checkVariant(variant);
  const v = asVector(vector, handle.rows);
  const inPath = tempPath(".vecf64");
  const outPath = tempPath(".vecf64");
  writeVecF64(v, inPath);
  try {
    const result = runCli([
      "multiply", handle.indexPath, inPath, outPath, "--variant", chosen]);
    const summary = lastJsonLine(result.stdout);
    return {
      result: readVecF64(outPath),
      multiplyNs: summary["multiply_ns"] as number,
    };
  } finally {
    unlinkSync(inPath);
    try {
      unlinkSync(outPath);
    } catch {
      // absent when the multiply failed before writing
    }
  }
}

/** v times the indexed matrix; bitwise what the Python kernels produce. */
export function multiply(
  handle: Handle,
  vector: Float64Array | ReadonlyArray<number>,
  variant: string = "rsrpp",
): Float64Array {
  return multiplyTimed(handle, vector, variant).result;
}

/** Copy the handle's index file to path; bytes are canonical. */
export function save(handle: Handle, path: string): void {
  copyFileSync(handle.indexPath, path);
}

/** Validate an index file and wrap it in a fresh handle (the file is
 *  copied, so the handle stays usable if the original moves). */
export function load(path: string): Handle {
  readRsxHeader(path);
  const owned = tempPath(".rsx");
  copyFileSync(path, owned);
  return handleFor(owned);
}
