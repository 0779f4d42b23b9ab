/** File formats shared with the CLI: .tpk and .vecf64 IO, .rsx header. */

import { readFileSync, writeFileSync } from "node:fs";

import { FormatError } from "./errors.js";
import type { TernaryView } from "./matrix.js";

const TPK_MAGIC = "TPK1";
const VEC_MAGIC = "VF64";
const RSX_MAGIC = "RSX1";
export const RSX_HEADER_BYTES = 29;

function toSafeNumber(value: bigint, what: string): number {
  if (value > BigInt(Number.MAX_SAFE_INTEGER)) {
    throw new FormatError(`${what} ${value} exceeds the safe integer range`);
  }
  return Number(value);
}

/** Packed ternary matrix: 2 bits per entry (00 zero, 01 one, 10 minus one),
 *  MSB-first within each byte, each row padded to a whole byte. */
export function writeTpk(matrix: TernaryView, path: string): void {
  const { rows, cols, data } = matrix;
  const rowBytes = Math.ceil(cols / 4);
  const buf = Buffer.alloc(20 + rows * rowBytes);
  buf.write(TPK_MAGIC, 0, "latin1");
  buf.writeBigUInt64LE(BigInt(rows), 4);
  buf.writeBigUInt64LE(BigInt(cols), 12);
  let offset = 20;
  for (let i = 0; i < rows; i++) {
    for (let j = 0; j < cols; j++) {
      const entry = data[i * cols + j] as number;
      const code = entry === 0 ? 0 : entry === 1 ? 1 : 2;
      const byte = offset + (j >> 2);
      buf[byte] = (buf[byte] as number) | (code << (6 - 2 * (j & 3)));
    }
    offset += rowBytes;
  }
  writeFileSync(path, buf);
}

export function readTpk(path: string): { rows: number; cols: number; data: Int8Array } {
  const raw = readFileSync(path);
  if (raw.length < 20) throw new FormatError("truncated header");
  if (raw.toString("latin1", 0, 4) !== TPK_MAGIC) throw new FormatError("bad magic");
  const rows = toSafeNumber(raw.readBigUInt64LE(4), "rows");
  const cols = toSafeNumber(raw.readBigUInt64LE(12), "cols");
  const rowBytes = Math.ceil(cols / 4);
  if (raw.length !== 20 + rows * rowBytes) {
    throw new FormatError(`expected ${20 + rows * rowBytes} bytes, found ${raw.length}`);
  }
  const data = new Int8Array(rows * cols);
  const lookup = [0, 1, -1] as const;
  for (let i = 0; i < rows; i++) {
    const base = 20 + i * rowBytes;
    for (let j = 0; j < cols; j++) {
      const code = ((raw[base + (j >> 2)] as number) >> (6 - 2 * (j & 3))) & 3;
      if (code === 3) throw new FormatError(`invalid code 11 at row ${i}, col ${j}`);
      data[i * cols + j] = lookup[code] as number;
    }
    const padStart = cols;
    for (let j = padStart; j < rowBytes * 4; j++) {
      if ((((raw[base + (j >> 2)] as number) >> (6 - 2 * (j & 3))) & 3) !== 0) {
        throw new FormatError(`nonzero padding in row ${i}`);
      }
    }
  }
  return { rows, cols, data };
}

export function writeVecF64(values: Float64Array, path: string): void {
  const buf = Buffer.alloc(12 + 8 * values.length);
  buf.write(VEC_MAGIC, 0, "latin1");
  buf.writeBigUInt64LE(BigInt(values.length), 4);
  for (let i = 0; i < values.length; i++) buf.writeDoubleLE(values[i] as number, 12 + 8 * i);
  writeFileSync(path, buf);
}

export function readVecF64(path: string): Float64Array {
  const raw = readFileSync(path);
  if (raw.length < 12) throw new FormatError("truncated header");
  if (raw.toString("latin1", 0, 4) !== VEC_MAGIC) throw new FormatError("bad magic");
  const length = toSafeNumber(raw.readBigUInt64LE(4), "length");
  if (raw.length !== 12 + 8 * length) {
    throw new FormatError(`expected ${12 + 8 * length} bytes, found ${raw.length}`);
  }
  const out = new Float64Array(length);
  for (let i = 0; i < length; i++) out[i] = raw.readDoubleLE(12 + 8 * i);
  return out;
}

export interface RsxHeader {
  kind: "binary" | "ternary";
  rows: number;
  cols: number;
  k: number;
  blockCount: number;
}

export function readRsxHeader(path: string): RsxHeader {
  const raw = readFileSync(path);
  if (raw.length < RSX_HEADER_BYTES) throw new FormatError("truncated header");
  if (raw.toString("latin1", 0, 4) !== RSX_MAGIC) throw new FormatError("bad magic");
  const version = raw.readUInt16LE(4);
  if (version !== 1) throw new FormatError(`unsupported version ${version}`);
  const kindCode = raw.readUInt8(6);
  if (kindCode !== 1 && kindCode !== 2) throw new FormatError(`unknown index kind ${kindCode}`);
  const rows = toSafeNumber(raw.readBigUInt64LE(7), "rows");
  const cols = toSafeNumber(raw.readBigUInt64LE(15), "cols");
  if (rows < 1 || cols < 1) throw new FormatError("index dimensions must be at least 1x1");
  return {
    kind: kindCode === 1 ? "binary" : "ternary",
    rows,
    cols,
    k: raw.readUInt16LE(23),
    blockCount: raw.readUInt32LE(25),
  };
}
