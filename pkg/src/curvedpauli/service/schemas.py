"""Typed request and response payloads shared by the HTTP app and the CLI.

Quantum numbers travel as "p/2" strings (exact), floats as plain JSON
numbers. Every config model round-trips unchanged through model_dump /
model_validate.
"""
from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..errors import DomainError
from ..quantum import HalfInt


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


def _validate_half_int(text: str) -> str:
    # normalizes "3/2" / "-1/2" / "2"; ValueError so pydantic wraps it
    try:
        return str(HalfInt.parse(text))
    except DomainError as exc:
        raise ValueError(str(exc)) from exc


class SpectrumRequest(StrictModel):
    model: Literal["ds", "ads"] = "ds"
    mass: float = 1.0
    j_max: str = "3/2"
    n_max: int = Field(default=2, ge=0)
    format: Literal["csv", "json"] = "csv"
    out: Optional[str] = None

    @field_validator("j_max")
    @classmethod
    def _j_max_half_int(cls, v: str) -> str:
        return _validate_half_int(v)


class SpectrumRow(StrictModel):
    j: str
    n: int
    two_me: float
    energy: float


class SpectrumResponse(StrictModel):
    model: Literal["ds", "ads"]
    mass: float
    rows: list[SpectrumRow]


class EvalRequest(StrictModel):
    model: Literal["ds", "ads"] = "ds"
    mass: float = 1.0
    j: str = "1/2"
    m: str = "1/2"
    delta: int = 1
    n: Optional[int] = None            # expanding-model selector
    energy: Optional[float] = None     # oscillating-model selector, the value is 2ME
    grid_r: int = 41
    grid_t: int = 7
    margin: float = 0.05
    theta: float = 1.5707963267948966
    phi: float = 0.0
    format: Literal["csv", "json"] = "csv"
    out: Optional[str] = None

    @field_validator("j", "m")
    @classmethod
    def _half_int(cls, v: str) -> str:
        return _validate_half_int(v)


class EvalRow(StrictModel):
    r: float
    t: float
    re_f: float
    im_f: float
    re_g_small: float
    im_g_small: float
    psi_sq: float


class EvalResponse(StrictModel):
    request: EvalRequest
    rows: list[EvalRow]


class VerifyRequest(StrictModel):
    model: Literal["ds", "ads", "both"] = "both"
    mass: float = 1.0
    j_max: Optional[str] = None      # per-model default: 7/2 expanding, 3/2 oscillating
    n_max: Optional[int] = Field(default=None, ge=0)
    deltas: Optional[list[int]] = None
    energies: list[float] = [0.5, 1.0, 4.0]
    grid_r: int = 41
    grid_t: int = 7
    margin: float = 0.05
    tolerance: float = 1e-7
    masses: Optional[list[float]] = None
    inject_error: Optional[dict[str, float]] = None
    format: Literal["csv", "json"] = "json"
    out: Optional[str] = None

    @field_validator("j_max")
    @classmethod
    def _j_max_half_int(cls, v: Optional[str]) -> Optional[str]:
        return None if v is None else _validate_half_int(v)

    @field_validator("deltas")
    @classmethod
    def _deltas_signs(cls, v: Optional[list[int]]) -> Optional[list[int]]:
        if v is not None and any(d not in (1, -1) for d in v):
            raise ValueError(f"deltas must contain only +1 or -1, got {v}")
        return v


class ModeInfo(StrictModel):
    model: Literal["ds", "ads"]
    j: str
    m: str
    n: int
    delta: int
    E: float


class GridInfo(StrictModel):
    r_points: int
    t_points: int
    margin: float


class ResultRow(StrictModel):
    equation_id: str
    mode: ModeInfo
    max_abs: float
    rms: float
    grid: GridInfo


class ScalingRow(StrictModel):
    equation_id: str
    mode: ModeInfo
    masses: list[float]
    residuals: list[float]
    ratios: list[float]
    monotone: bool
    ratios_in_range: bool


class VerifyReport(StrictModel):
    run_config: VerifyRequest
    results: list[ResultRow]
    scaling: Optional[list[ScalingRow]] = None
    passed: bool = Field(alias="pass")
