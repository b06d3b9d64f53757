/** Test plumbing: service lifecycle, CLI invocation, raw files, seeded data. */

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { createHash } from "node:crypto";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import type { Grid, GridData, GridDtype } from "../src/index.js";

const PYTHON = process.env.SATSWEEP_PYTHON ?? "python3";

export interface Service {
  baseUrl: string;
  stop(): void;
}

export async function startService(port: number): Promise<Service> {
  const child: ChildProcess = spawn(
    PYTHON,
    ["-m", "uvicorn", "satsweep.service:app", "--host", "127.0.0.1", "--port", String(port), "--log-level", "warning"],
    { stdio: ["ignore", "inherit", "inherit"] },
  );
  const baseUrl = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const resp = await fetch(`${baseUrl}/v1/health`);
      if (resp.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      child.kill();
      throw new Error("service did not become healthy within 30s");
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  return { baseUrl, stop: () => void child.kill() };
}

export function makeTempDir(): { dir: string; cleanup(): void } {
  const dir = mkdtempSync(join(tmpdir(), "satsweep-client-"));
  return { dir, cleanup: () => rmSync(dir, { recursive: true, force: true }) };
}

export function dtypeOf(data: GridData): GridDtype {
  if (data instanceof Uint8Array) return "u8";
  if (data instanceof Uint16Array) return "u16";
  return "f32";
}

/** Write a grid as raw + sidecar, the CLI's input format. */
export function writeRawGrid(dir: string, name: string, grid: Grid): string {
  const rawPath = join(dir, name);
  writeFileSync(rawPath, Buffer.from(grid.data.buffer, grid.data.byteOffset, grid.data.byteLength));
  writeFileSync(
    `${rawPath}.json`,
    JSON.stringify({ rows: grid.rows, cols: grid.cols, dtype: dtypeOf(grid.data), endianness: "little" }) + "\n",
  );
  return rawPath;
}

export interface CliResult {
  dtype: "u64" | "f64";
  rows: number;
  cols: number;
  data: BigUint64Array | Float64Array;
}

/** Run `satsweep run` on a raw grid file and read back the raw result. */
export function cliRun(
  dir: string,
  inputRaw: string,
  window: number,
  stat: string,
  method: string,
  stride = 1,
): CliResult {
  const outPath = join(dir, `out-${method}-${stat}-${window}-${stride}.raw`);
  execFileSync(PYTHON, [
    "-m",
    "satsweep.cli",
    "run",
    "--input",
    inputRaw,
    "--format",
    "raw",
    "--window",
    String(window),
    "--stride",
    String(stride),
    "--stat",
    stat,
    "--method",
    method,
    "--output",
    outPath,
  ]);
  const sidecar = JSON.parse(readFileSync(`${outPath}.json`, "utf-8")) as {
    rows: number;
    cols: number;
    dtype: "u64" | "f64";
  };
  const bytes = readFileSync(outPath);
  const copy = new Uint8Array(bytes.byteLength);
  copy.set(bytes);
  const data = sidecar.dtype === "u64" ? new BigUint64Array(copy.buffer) : new Float64Array(copy.buffer);
  return { dtype: sidecar.dtype, rows: sidecar.rows, cols: sidecar.cols, data };
}

/** Deterministic 32-bit PRNG so test inputs are reproducible. */
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

export function randomGrid(rand: () => number, rows: number, cols: number, dtype: GridDtype): Grid {
  const n = rows * cols;
  let data: GridData;
  if (dtype === "u8") {
    data = new Uint8Array(n);
    for (let i = 0; i < n; i++) data[i] = Math.floor(rand() * 256);
  } else if (dtype === "u16") {
    data = new Uint16Array(n);
    for (let i = 0; i < n; i++) data[i] = Math.floor(rand() * 65536);
  } else {
    data = new Float32Array(n);
    for (let i = 0; i < n; i++) data[i] = Math.fround(rand());
  }
  return { rows, cols, data };
}

export function sha256(data: GridData): string {
  return createHash("sha256").update(Buffer.from(data.buffer, data.byteOffset, data.byteLength)).digest("hex");
}
