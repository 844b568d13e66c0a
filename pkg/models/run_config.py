# models/run_config.py
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

Command = Literal["bounds", "verify-theorem2", "verify-r2-model", "moment", "rank", "lr-config"]
OutputFormat = Literal["json", "csv", "md"]


class RunConfig(BaseModel):
    """One CLI invocation, validated before dispatch."""

    command: Command
    k_values: List[int] = []
    r_values: List[int] = []
    s: Optional[int] = None
    manifold: Literal["R^k", "RP^k"] = "R^k"
    output_format: OutputFormat = "json"
    out: Optional[str] = None
    seed: int = 0
    trials: int = Field(100, ge=1)
    delta: float = Field(1e-3, ge=0.0)
    epsilon: float = Field(0.4, gt=0.0, le=0.5)
    grid_n: int = Field(4096, ge=1)
    angles: Optional[List[float]] = None
    sweep: bool = False
    moment: bool = False
    audit_pairing: bool = False
    tol_eq: Optional[float] = Field(None, gt=0.0)
    tol_curv: Optional[float] = Field(None, gt=0.0)
    rank_tolerance: Optional[float] = Field(None, gt=0.0, lt=1.0)

    @field_validator("manifold", mode="before")
    @classmethod
    def _manifold_alias(cls, value):
        return {"euclidean": "R^k", "projective": "RP^k"}.get(value, value)

    @field_validator("output_format", mode="before")
    @classmethod
    def _format_alias(cls, value):
        return "md" if value == "markdown" else value

    @field_validator("k_values", "r_values")
    @classmethod
    def _positive(cls, values):
        if any(v < 1 for v in values):
            raise ValueError(f"values must be >= 1, got {values}")
        return values

    @model_validator(mode="after")
    def _command_preconditions(self):
        needs_k = {"bounds", "verify-theorem2", "verify-r2-model", "lr-config"}
        needs_r = {"bounds", "verify-theorem2", "moment", "rank"}
        if self.command in needs_k and not self.k_values:
            raise ValueError(f"'{self.command}' needs a non-empty --k range")
        if self.command in needs_r and not self.r_values:
            raise ValueError(f"'{self.command}' needs a non-empty --r range")
        if self.command == "verify-r2-model" and min(self.k_values) < 2:
            raise ValueError("the r = 2 model needs k >= 2")
        if self.command == "lr-config":
            if (self.s is None) == (not self.r_values):
                raise ValueError("'lr-config' needs exactly one of --s or --r")
            if self.s is not None and self.s < 1:
                raise ValueError(f"--s must be >= 1, got {self.s}")
            if min(self.k_values) < 2:
                raise ValueError("L(r) configurations need k >= 2")
        if self.moment and self.command not in {"moment", "rank"}:
            raise ValueError("--moment applies to 'moment' and 'rank' only")
        if self.angles is not None:
            if self.command not in {"moment", "rank"}:
                raise ValueError("--angles applies to 'moment' and 'rank' only")
            if self.r_values != [len(self.angles)]:
                raise ValueError(f"--r must equal the number of angles ({len(self.angles)})")
        if self.command == "moment" and self.grid_n < 64 * max(self.r_values):
            raise ValueError(f"--grid must be at least 64·r = {64 * max(self.r_values)}")
        return self


class AuditReport(BaseModel):
    """Top-level document written by every command."""

    command: str
    config: Dict[str, Any]
    results: List[Dict[str, Any]] = []
    findings: List[str] = []
