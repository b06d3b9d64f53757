/**
 * Client acceptance: swa() over 50 random grids matches the CLI's raw
 * output through the same engine (exact for integer sums, 1e-9 relative
 * otherwise), and input buffers are never mutated (checksummed).
 */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { SatsweepClient, SatsweepError, type Grid, type Stat, type Method } from "../src/index.js";
import {
  cliRun,
  dtypeOf,
  makeTempDir,
  mulberry32,
  randomGrid,
  sha256,
  startService,
  writeRawGrid,
  type Service,
} from "./helpers.js";

let service: Service;
let client: SatsweepClient;
const tmp = makeTempDir();

beforeAll(async () => {
  service = await startService(8900 + Math.floor(Math.random() * 800));
  client = new SatsweepClient(service.baseUrl);
}, 60_000);

afterAll(() => {
  service?.stop();
  tmp.cleanup();
});

function expectClose(actual: ArrayLike<number | bigint>, expected: ArrayLike<number | bigint>, rtol: number) {
  expect(actual.length).toBe(expected.length);
  for (let i = 0; i < actual.length; i++) {
    const a = Number(actual[i]);
    const b = Number(expected[i]);
    const tol = rtol * Math.max(Math.abs(a), Math.abs(b));
    if (Math.abs(a - b) > tol) {
      throw new Error(`index ${i}: ${a} vs ${b} beyond rtol ${rtol}`);
    }
  }
}

describe("hand examples", () => {
  it("sums the 2x2 grid to 10", async () => {
    const grid: Grid = { rows: 2, cols: 2, data: new Uint8Array([1, 2, 3, 4]) };
    const out = await client.swa(grid, 2, { stat: "sum", method: "integral" });
    expect(out.dtype).toBe("u64");
    expect(out.rows).toBe(1);
    expect(out.data[0]).toBe(10n);
  });

  it("returns zero std for constant grids", async () => {
    const grid: Grid = { rows: 8, cols: 8, data: new Uint16Array(64).fill(1234) };
    const out = await client.swa(grid, 3, { stat: "std" });
    expect(out.dtype).toBe("f64");
    for (const v of out.data as Float64Array) expect(v).toBe(0);
  });

  it("rejects windows larger than the grid with the server's message", async () => {
    const grid: Grid = { rows: 3, cols: 3, data: new Uint8Array(9) };
    await expect(client.swa(grid, 4)).rejects.toThrowError(SatsweepError);
    await expect(client.swa(grid, 4)).rejects.toThrowError(/window size 4 exceeds/);
  });

  it("rejects dimension mismatches locally", async () => {
    const grid: Grid = { rows: 3, cols: 3, data: new Uint8Array(8) };
    await expect(client.swa(grid, 2)).rejects.toThrowError(RangeError);
  });

  it("reports output dims", async () => {
    expect(await client.outputDims(10, 10, 4, 3)).toEqual({ rows: 3, cols: 3 });
  });

  it("surfaces health and version", async () => {
    const health = await client.health();
    expect(health.status).toBe("ok");
    expect(health.default_workers).toBeGreaterThanOrEqual(1);
  });
});

describe("multi-window", () => {
  it("matches per-window swa calls from one table build", async () => {
    const rand = mulberry32(4242);
    const grid = randomGrid(rand, 48, 40, "u16");
    const windows = [1, 5, 16];
    const multi = await client.multiWindow(grid, windows, "mean");
    for (let i = 0; i < windows.length; i++) {
      const single = await client.swa(grid, windows[i], { stat: "mean", method: "integral" });
      expect(multi[i].rows).toBe(single.rows);
      expect(Array.from(multi[i].data as Float64Array)).toEqual(Array.from(single.data as Float64Array));
    }
  });

  it("rejects an empty window list", async () => {
    const grid: Grid = { rows: 4, cols: 4, data: new Uint8Array(16) };
    await expect(client.multiWindow(grid, [])).rejects.toThrowError(SatsweepError);
  });
});

describe("server-side generation", () => {
  it("is deterministic for a fixed seed", async () => {
    const a = await client.generate("random", 16, 12, "u16", { seed: 7 });
    const b = await client.generate("random", 16, 12, "u16", { seed: 7 });
    expect(sha256(a.data)).toBe(sha256(b.data));
    expect(a.rows).toBe(16);
  });
});

describe("CLI equivalence over 50 random grids", () => {
  it(
    "matches the CLI raw outputs without mutating input buffers",
    async () => {
      const rand = mulberry32(0xacce55);
      const dtypes = ["u8", "u16", "f32"] as const;
      const stats: Stat[] = ["sum", "mean", "std"];
      const methods: Method[] = ["integral", "parallel", "dp", "naive"];
      let exactSums = 0;
      for (let i = 0; i < 50; i++) {
        const dtype = dtypes[i % dtypes.length];
        const stat = stats[i % stats.length];
        const method = methods[i % methods.length];
        const rows = 16 + Math.floor(rand() * 49);
        const cols = 16 + Math.floor(rand() * 49);
        const w = 1 + Math.floor(rand() * Math.min(rows, cols, 16));
        const stride = rand() < 0.5 ? 1 : w;
        const grid = randomGrid(rand, rows, cols, dtype);

        const before = sha256(grid.data);
        const viaClient = await client.swa(grid, w, { stat, method, stride });
        expect(sha256(grid.data)).toBe(before); // input buffer untouched

        const rawPath = writeRawGrid(tmp.dir, `grid-${i}.raw`, grid);
        const viaCli = cliRun(tmp.dir, rawPath, w, stat, method, stride);

        expect(viaClient.dtype).toBe(viaCli.dtype);
        expect(viaClient.rows).toBe(viaCli.rows);
        expect(viaClient.cols).toBe(viaCli.cols);
        if (viaClient.dtype === "u64") {
          expect(viaClient.data).toEqual(viaCli.data); // exact integer sums
          exactSums++;
        } else {
          expectClose(viaClient.data, viaCli.data, 1e-9);
        }
      }
      expect(exactSums).toBeGreaterThan(0);
    },
    300_000,
  );
});
