"""HTTP service wrapping the engine.

Run with: uvicorn satsweep.service:app
"""

from __future__ import annotations

import base64
import binascii
import os
import time

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__, api
from ..errors import SatsweepError
from ..grid import ElemKind, ImageGrid, StatKind, WindowSpec, output_dims
from ..imgio import RAW_DTYPES, generate
from ..integral import swa_multi_window
from .schemas import (
    AnalyzeRequest,
    AnalyzeResponse,
    GenerateRequest,
    GenerateResponse,
    GridPayload,
    HealthResponse,
    MultiWindowRequest,
    MultiWindowResponse,
    OutputDimsResponse,
    ResultPayload,
)


def _decode_grid(payload: GridPayload) -> np.ndarray:
    try:
        raw = base64.b64decode(payload.data_b64, validate=True)
    except (binascii.Error, ValueError):
        raise HTTPException(status_code=400, detail="data_b64: invalid base64 payload")
    dtype = RAW_DTYPES[payload.dtype]
    expected = payload.rows * payload.cols * dtype.itemsize
    if len(raw) != expected:
        raise HTTPException(
            status_code=400,
            detail=f"data_b64: payload is {len(raw)} bytes, expected {expected} for "
            f"{payload.rows}x{payload.cols} {payload.dtype}",
        )
    values = np.frombuffer(raw, dtype=dtype).reshape(payload.rows, payload.cols)
    return np.ascontiguousarray(values, dtype=ElemKind(payload.dtype).dtype)


def _encode_result(window: int, values: np.ndarray) -> ResultPayload:
    token = "u64" if values.dtype == np.uint64 else "f64"
    data = np.ascontiguousarray(values, dtype=RAW_DTYPES[token]).tobytes()
    return ResultPayload(
        window=window,
        out_rows=values.shape[0],
        out_cols=values.shape[1],
        dtype=token,
        data_b64=base64.b64encode(data).decode("ascii"),
    )


def create_app() -> FastAPI:
    app = FastAPI(title="satsweep", version=__version__)

    @app.get("/v1/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(version=__version__, default_workers=os.cpu_count() or 1)

    @app.get("/v1/output-dims", response_model=OutputDimsResponse)
    def dims(rows: int, cols: int, window: int, stride: int = 1) -> OutputDimsResponse:
        try:
            out_r, out_c = output_dims(rows, cols, WindowSpec(window, stride))
        except (SatsweepError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return OutputDimsResponse(out_rows=out_r, out_cols=out_c)

    @app.post("/v1/analyze", response_model=AnalyzeResponse)
    def analyze(req: AnalyzeRequest) -> AnalyzeResponse:
        array = _decode_grid(req)
        t0 = time.perf_counter()
        try:
            values = api.swa(array, req.window, req.stat, req.method, req.stride, req.threads)
        except (SatsweepError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        elapsed = (time.perf_counter() - t0) * 1e3
        result = _encode_result(req.window, values)
        return AnalyzeResponse(**result.model_dump(), elapsed_ms=elapsed)

    @app.post("/v1/multi-window", response_model=MultiWindowResponse)
    def multi(req: MultiWindowRequest) -> MultiWindowResponse:
        array = _decode_grid(req)
        t0 = time.perf_counter()
        try:
            img = ImageGrid.from_array(array)
            specs = [WindowSpec(w) for w in req.windows]
            results = swa_multi_window(img, specs, StatKind.parse(req.stat))
        except (SatsweepError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        elapsed = (time.perf_counter() - t0) * 1e3
        return MultiWindowResponse(
            results=[_encode_result(w, r.values) for w, r in zip(req.windows, results)],
            elapsed_ms=elapsed,
        )

    @app.post("/v1/generate", response_model=GenerateResponse)
    def gen(req: GenerateRequest) -> GenerateResponse:
        try:
            img = generate(
                req.kind, req.rows, req.cols, ElemKind(req.dtype), seed=req.seed, value=req.value, tile=req.tile
            )
        except (SatsweepError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        data = np.ascontiguousarray(img.values, dtype=RAW_DTYPES[req.dtype]).tobytes()
        return GenerateResponse(
            rows=img.rows, cols=img.cols, dtype=req.dtype, data_b64=base64.b64encode(data).decode("ascii")
        )

    return app


app = create_app()
