# models/configuration.py
from typing import List, Optional

from pydantic import BaseModel


class Configuration(BaseModel):
    """r labeled points in R^k, a point of the configuration space B(R^k, r)."""

    k: int
    r: int
    epsilon: float
    points: List[List[float]]
    labels: List[str]
    min_distance: Optional[float] = None
    separation_bound: Optional[float] = None
    translations: List[float] = []
    direction_parameters: int = 0


class TauReport(BaseModel):
    rank: int
    required: int
    in_omega: bool
    singular_values: List[float]
    rank_tolerance: float
    condition: float
    angles: Optional[List[float]] = None


class GenericitySummary(BaseModel):
    r: int
    trials: int
    seed: int
    min_separation: float
    regular_fraction: float
    omega_hits: int
    worst_condition: float
    evidence: str = "monte-carlo"
