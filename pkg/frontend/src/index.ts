/**
 * Client for the satsweep HTTP service.
 *
 * Grids are plain typed arrays with explicit dims; they cross the wire as
 * base64-encoded packed little-endian samples, so uint64 sums stay exact
 * (JSON numbers would not survive past 2^53). Input buffers are never
 * mutated.
 */

export type GridData = Uint8Array | Uint16Array | Float32Array;
export type ResultData = BigUint64Array | Float64Array;
export type Stat = "sum" | "mean" | "std";
export type Method = "naive" | "dp" | "integral" | "parallel";
export type GridDtype = "u8" | "u16" | "f32";

export interface Grid {
  rows: number;
  cols: number;
  data: GridData;
}

export interface ResultGrid {
  rows: number;
  cols: number;
  dtype: "u64" | "f64";
  data: ResultData;
}

export interface SwaOptions {
  stat?: Stat;
  method?: Method;
  stride?: number;
  threads?: number;
}

export interface GenerateOptions {
  seed?: number;
  value?: number;
  tile?: number;
}

export interface Health {
  status: string;
  version: string;
  default_workers: number;
}

/** Raised for any request the service rejects; carries the server's message. */
export class SatsweepError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.name = "SatsweepError";
    this.status = status;
  }
}

// the wire format is little-endian; typed arrays use platform order
const LITTLE_ENDIAN = new Uint8Array(new Uint16Array([1]).buffer)[0] === 1;
if (!LITTLE_ENDIAN) {
  throw new Error("satsweep-client requires a little-endian host");
}

function dtypeOf(data: GridData): GridDtype {
  if (data instanceof Uint8Array) return "u8";
  if (data instanceof Uint16Array) return "u16";
  if (data instanceof Float32Array) return "f32";
  throw new TypeError("grid data must be Uint8Array, Uint16Array, or Float32Array");
}

function toBase64(data: GridData): string {
  return Buffer.from(data.buffer, data.byteOffset, data.byteLength).toString("base64");
}

function checkGrid(grid: Grid): void {
  if (!Number.isInteger(grid.rows) || !Number.isInteger(grid.cols) || grid.rows < 1 || grid.cols < 1) {
    throw new RangeError(`grid dims must be positive integers, got ${grid.rows}x${grid.cols}`);
  }
  if (grid.data.length !== grid.rows * grid.cols) {
    throw new RangeError(`grid data has ${grid.data.length} elements, expected ${grid.rows * grid.cols}`);
  }
}

interface WireResult {
  window: number;
  out_rows: number;
  out_cols: number;
  dtype: "u64" | "f64";
  data_b64: string;
}

function decodeResult(body: WireResult): ResultGrid {
  const bytes = Buffer.from(body.data_b64, "base64");
  const copy = new Uint8Array(bytes.byteLength);
  copy.set(bytes);
  const data =
    body.dtype === "u64"
      ? new BigUint64Array(copy.buffer, 0, body.out_rows * body.out_cols)
      : new Float64Array(copy.buffer, 0, body.out_rows * body.out_cols);
  return { rows: body.out_rows, cols: body.out_cols, dtype: body.dtype, data };
}

export class SatsweepClient {
  readonly baseUrl: string;

  constructor(baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const resp = await fetch(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    return this.unwrap<T>(resp);
  }

  private async unwrap<T>(resp: Response): Promise<T> {
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        const body = (await resp.json()) as { detail?: unknown };
        if (body.detail !== undefined) detail = JSON.stringify(body.detail);
      } catch {
        // keep the status text
      }
      throw new SatsweepError(resp.status, detail);
    }
    return (await resp.json()) as T;
  }

  async health(): Promise<Health> {
    return this.unwrap<Health>(await fetch(`${this.baseUrl}/v1/health`));
  }

  async outputDims(rows: number, cols: number, window: number, stride = 1): Promise<{ rows: number; cols: number }> {
    const params = new URLSearchParams({
      rows: String(rows),
      cols: String(cols),
      window: String(window),
      stride: String(stride),
    });
    const body = await this.unwrap<{ out_rows: number; out_cols: number }>(
      await fetch(`${this.baseUrl}/v1/output-dims?${params}`),
    );
    return { rows: body.out_rows, cols: body.out_cols };
  }

  /** Sliding-window statistic over a grid; a fresh result array every call. */
  async swa(grid: Grid, window: number, options: SwaOptions = {}): Promise<ResultGrid> {
    checkGrid(grid);
    const body = await this.post<WireResult & { elapsed_ms: number }>("/v1/analyze", {
      rows: grid.rows,
      cols: grid.cols,
      dtype: dtypeOf(grid.data),
      data_b64: toBase64(grid.data),
      window,
      stride: options.stride ?? 1,
      stat: options.stat ?? "sum",
      method: options.method ?? "parallel",
      threads: options.threads ?? 0,
    });
    return decodeResult(body);
  }

  /** Several window sizes answered from one set of tables. */
  async multiWindow(grid: Grid, windows: number[], stat: Stat = "sum"): Promise<ResultGrid[]> {
    checkGrid(grid);
    const body = await this.post<{ results: WireResult[] }>("/v1/multi-window", {
      rows: grid.rows,
      cols: grid.cols,
      dtype: dtypeOf(grid.data),
      data_b64: toBase64(grid.data),
      windows,
      stat,
    });
    return body.results.map(decodeResult);
  }

  /** Server-side deterministic grid generation (same PRNG as the CLI). */
  async generate(
    kind: "random" | "constant" | "checkerboard",
    rows: number,
    cols: number,
    dtype: GridDtype,
    options: GenerateOptions = {},
  ): Promise<Grid> {
    const body = await this.post<{ rows: number; cols: number; dtype: GridDtype; data_b64: string }>(
      "/v1/generate",
      { kind, rows, cols, dtype, seed: options.seed ?? 0, value: options.value ?? 1, tile: options.tile ?? 1 },
    );
    const bytes = Buffer.from(body.data_b64, "base64");
    const copy = new Uint8Array(bytes.byteLength);
    copy.set(bytes);
    const data =
      body.dtype === "u8"
        ? new Uint8Array(copy.buffer)
        : body.dtype === "u16"
          ? new Uint16Array(copy.buffer)
          : new Float32Array(copy.buffer);
    return { rows: body.rows, cols: body.cols, data };
  }
}
