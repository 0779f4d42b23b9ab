/** Subprocess transport: every operation crosses to the rsr CLI. */

import { spawnSync } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { FormatError, MismatchError, TransportError, UsageError } from "./errors.js";

/** Override with RSR_CLI when the executable is not on PATH. */
export function cliPath(): string {
  return process.env["RSR_CLI"] ?? "rsr";
}

export interface CliResult {
  stdout: string;
  stderr: string;
}

export function runCli(args: string[]): CliResult {
  const proc = spawnSync(cliPath(), args, {
    encoding: "utf8",
    maxBuffer: 64 * 1024 * 1024,
  });
  if (proc.error) {
    throw new TransportError(
      `could not run ${cliPath()}: ${proc.error.message}; ` +
      "install the Python package (pip install -e .) or set RSR_CLI");
  }
  const detail = proc.stderr.trim() || `exit status ${proc.status}`;
  switch (proc.status) {
    case 0:
      return { stdout: proc.stdout, stderr: proc.stderr };
    case 1:
      throw new MismatchError(detail);
    case 2:
      throw new UsageError(detail);
    case 3:
      throw new FormatError(detail);
    default:
      throw new TransportError(`${cliPath()} ${args[0]}: ${detail}`);
  }
}

/** Parse the single-line JSON summary the CLI prints on success. */
export function lastJsonLine(stdout: string): Record<string, unknown> {
  const lines = stdout.trim().split("\n");
  const last = lines[lines.length - 1];
  if (!last) throw new TransportError("CLI produced no output");
  return JSON.parse(last) as Record<string, unknown>;
}

let workDir: string | null = null;
let fileId = 0;

/** Lazily created scratch directory, removed when the process exits. */
export function tempPath(suffix: string): string {
  if (workDir === null) {
    workDir = mkdtempSync(join(tmpdir(), "rsr-frontend-"));
    process.on("exit", () => {
      try {
        rmSync(workDir as string, { recursive: true, force: true });
      } catch {
        // scratch cleanup is best effort
      }
    });
  }
  fileId += 1;
  return join(workDir, `f${fileId}${suffix}`);
}
