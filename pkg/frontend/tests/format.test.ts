import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, describe, expect, it } from "vitest";

import { FormatError } from "../src/errors.js";
import {
  readRsxHeader,
  readTpk,
  readVecF64,
  RSX_HEADER_BYTES,
  writeTpk,
  writeVecF64,
} from "../src/format.js";
import { mulberry32, randomTernary } from "../src/bench.js";
import { preprocess, save } from "../src/bindings.js";
import { runCli } from "../src/transport.js";

const dir = mkdtempSync(join(tmpdir(), "rsr-format-"));
afterAll(() => rmSync(dir, { recursive: true, force: true }));

let fileId = 0;
function scratch(suffix: string): string {
  fileId += 1;
  return join(dir, `t${fileId}${suffix}`);
}

describe("tpk round trip", () => {
  it("preserves a small matrix with every symbol", () => {
    const matrix = {
      rows: 2,
      cols: 3,
      data: Int8Array.from([1, -1, 0, 0, 1, -1]),
    };
    const path = scratch(".tpk");
    writeTpk(matrix, path);
    const back = readTpk(path);
    expect(back.rows).toBe(2);
    expect(back.cols).toBe(3);
    expect(Array.from(back.data)).toEqual([1, -1, 0, 0, 1, -1]);
  });

  it("round-trips awkward shapes, including byte padding", () => {
    const rand = mulberry32(7);
    for (const [rows, cols] of [[1, 1], [3, 5], [4, 4], [7, 13], [1, 9]]) {
      const matrix = randomTernary(rows as number, cols as number, rand);
      const path = scratch(".tpk");
      writeTpk(matrix, path);
      const back = readTpk(path);
      expect(back.rows).toBe(rows);
      expect(back.cols).toBe(cols);
      expect(Array.from(back.data)).toEqual(Array.from(matrix.data));
    }
  });

  it("packs two bits per entry, high bits first", () => {
    const path = scratch(".tpk");
    writeTpk({ rows: 1, cols: 3, data: Int8Array.from([1, -1, 0]) }, path);
    const raw = readFileSync(path);
    expect(raw.length).toBe(21);
    expect(raw[20]).toBe(0b01_10_00_00);
  });

  it("rejects the reserved code 11", () => {
    const path = scratch(".tpk");
    writeTpk({ rows: 1, cols: 4, data: Int8Array.from([0, 0, 0, 0]) }, path);
    const raw = readFileSync(path);
    raw[20] = 0b11_00_00_00;
    writeFileSync(path, raw);
    expect(() => readTpk(path)).toThrow(FormatError);
    expect(() => readTpk(path)).toThrow(/invalid code/);
  });

  it("rejects nonzero padding bits", () => {
    const path = scratch(".tpk");
    writeTpk({ rows: 1, cols: 3, data: Int8Array.from([0, 0, 0]) }, path);
    const raw = readFileSync(path);
    raw[20] = 0b00_00_00_01;
    writeFileSync(path, raw);
    expect(() => readTpk(path)).toThrow(/padding/);
  });

  it("rejects truncation and bad magic", () => {
    const path = scratch(".tpk");
    writeTpk({ rows: 2, cols: 3, data: Int8Array.from([1, 0, 0, 0, 0, 1]) }, path);
    const raw = readFileSync(path);
    writeFileSync(path, raw.subarray(0, raw.length - 1));
    expect(() => readTpk(path)).toThrow(FormatError);
    const bad = Buffer.from(raw);
    bad.write("NOPE", 0, "latin1");
    writeFileSync(path, bad);
    expect(() => readTpk(path)).toThrow(/magic/);
  });
});

describe("vecf64 round trip", () => {
  it("is bit exact, including negative zero and tiny fractions", () => {
    const values = Float64Array.from([0, -0, 1.5, -2.25, 1e-300, 123456789.000001]);
    const path = scratch(".vecf64");
    writeVecF64(values, path);
    const back = readVecF64(path);
    expect(Buffer.from(back.buffer)).toEqual(Buffer.from(values.buffer));
  });

  it("handles the empty vector", () => {
    const path = scratch(".vecf64");
    writeVecF64(new Float64Array(0), path);
    expect(readVecF64(path).length).toBe(0);
  });

  it("rejects length mismatches", () => {
    const path = scratch(".vecf64");
    writeVecF64(Float64Array.from([1, 2]), path);
    const raw = readFileSync(path);
    writeFileSync(path, raw.subarray(0, raw.length - 4));
    expect(() => readVecF64(path)).toThrow(/expected/);
  });
});

describe("rsx header", () => {
  it("reads back what preprocess wrote", () => {
    const handle = preprocess([[1, 0, -1], [0, 1, 1], [1, 1, 0], [0, -1, 1]], 2);
    const path = scratch(".rsx");
    save(handle, path);
    const header = readRsxHeader(path);
    expect(header).toEqual({ kind: "ternary", rows: 4, cols: 3, k: 2, blockCount: 2 });
  });

  it("rejects bad magic, version, kind, and truncation", () => {
    const handle = preprocess([[1, 0], [0, 1]], 1);
    const path = scratch(".rsx");
    save(handle, path);
    const raw = readFileSync(path);

    const magic = Buffer.from(raw);
    magic.write("XXXX", 0, "latin1");
    writeFileSync(path, magic);
    expect(() => readRsxHeader(path)).toThrow(/magic/);

    const version = Buffer.from(raw);
    version.writeUInt16LE(9, 4);
    writeFileSync(path, version);
    expect(() => readRsxHeader(path)).toThrow(/version/);

    const kind = Buffer.from(raw);
    kind.writeUInt8(7, 6);
    writeFileSync(path, kind);
    expect(() => readRsxHeader(path)).toThrow(/kind/);

    writeFileSync(path, raw.subarray(0, RSX_HEADER_BYTES - 1));
    expect(() => readRsxHeader(path)).toThrow(/truncated/);
  });
});

describe("cross-language files", () => {
  it("tpk written here verifies against the CLI's own oracle", () => {
    const rand = mulberry32(11);
    const matrix = randomTernary(16, 16, rand);
    const path = scratch(".tpk");
    writeTpk(matrix, path);
    const result = runCli(["verify", path, "--trials", "5", "--seed", "3"]);
    const lines = result.stdout.trim().split("\n");
    expect(JSON.parse(lines[lines.length - 1] as string)).toEqual({ status: "pass" });
  });

  it("vecf64 written here comes back through a CLI multiply", () => {
    const handle = preprocess([[1]], 1);
    const vin = scratch(".vecf64");
    const vout = scratch(".vecf64");
    writeVecF64(Float64Array.from([2.5]), vin);
    runCli(["multiply", handle.indexPath, vin, vout]);
    expect(Array.from(readVecF64(vout))).toEqual([2.5]);
  });
});
