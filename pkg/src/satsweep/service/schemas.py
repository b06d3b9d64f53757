"""Request/response models for the HTTP service.

Grid payloads cross the wire as base64-encoded packed little-endian
samples plus explicit dims and dtype, which keeps uint64 sums exact (JSON
numbers would not).
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

GridDtype = Literal["u8", "u16", "f32"]
ResultDtype = Literal["u64", "f64"]
Stat = Literal["sum", "mean", "std"]
Method = Literal["naive", "dp", "integral", "parallel"]


class GridPayload(BaseModel):
    rows: int = Field(ge=1)
    cols: int = Field(ge=1)
    dtype: GridDtype
    data_b64: str


class AnalyzeRequest(GridPayload):
    window: int = Field(ge=1)
    stride: int = Field(default=1, ge=1)
    stat: Stat = "sum"
    method: Method = "parallel"
    threads: int = Field(default=0, ge=0)


class ResultPayload(BaseModel):
    window: int
    out_rows: int
    out_cols: int
    dtype: ResultDtype
    data_b64: str


class AnalyzeResponse(ResultPayload):
    elapsed_ms: float


class MultiWindowRequest(GridPayload):
    windows: list[int]
    stat: Stat = "sum"


class MultiWindowResponse(BaseModel):
    results: list[ResultPayload]
    elapsed_ms: float


class GenerateRequest(BaseModel):
    kind: Literal["random", "constant", "checkerboard"]
    rows: int = Field(ge=1)
    cols: int = Field(ge=1)
    dtype: GridDtype
    seed: int = 0
    value: float = 1
    tile: int = Field(default=1, ge=1)


class GenerateResponse(GridPayload):
    pass


class OutputDimsResponse(BaseModel):
    out_rows: int
    out_cols: int


class HealthResponse(BaseModel):
    status: str = "ok"
    version: str
    default_workers: int
