# models/moment.py
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, model_validator


class Tolerances(BaseModel):
    tol_eq: float = 1e-10
    tol_curv: float = 1e-12
    tol_pos: float = 0.0
    positivity_slack: float = 1e-14
    tol_sep: float = 1e-6
    tol_zero: float = 1e-10

    @classmethod
    def from_config(cls, config) -> "Tolerances":
        return cls(
            tol_eq=config.TOL_EQ,
            tol_curv=config.TOL_CURV,
            tol_pos=config.TOL_POS,
            positivity_slack=config.POSITIVITY_SLACK,
            tol_sep=config.TOL_SEP,
            tol_zero=config.TOL_ZERO,
        )


class TrigPoly(BaseModel):
    """
    T(α) = c0 + Σ_m (p_m sin mα + q_m cos mα), m = 1..degree.

    `functional` optionally keeps the (ℓ, c) vector the polynomial was
    induced from, so touch conditions can be re-evaluated on a curve.
    """

    c0: float
    p: List[float]
    q: List[float]
    functional: Optional[List[float]] = None

    @model_validator(mode="after")
    def _same_length(self):
        if len(self.p) != len(self.q):
            raise ValueError("sine and cosine coefficient lists must have equal length")
        return self

    @property
    def degree(self) -> int:
        return len(self.p)

    def coefficient_vector(self) -> np.ndarray:
        """(c0, p_1, q_1, ..., p_r, q_r) for similarity comparisons."""
        return np.concatenate([[self.c0], np.column_stack([self.p, self.q]).ravel()])

    def evaluate(self, alpha, order: int = 0) -> np.ndarray:
        """Value (order 0) or derivative of order 1 or 2 at the given angles."""
        alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
        m = np.arange(1, self.degree + 1)
        phase = np.outer(alpha, m)
        s, c = np.sin(phase), np.cos(phase)
        p, q = np.asarray(self.p), np.asarray(self.q)
        if order == 0:
            return self.c0 + s @ p + c @ q
        if order == 1:
            return c @ (m * p) - s @ (m * q)
        if order == 2:
            return -(s @ (m ** 2 * p) + c @ (m ** 2 * q))
        raise ValueError(f"Unsupported derivative order {order}")

    def scaled(self, factor: float) -> "TrigPoly":
        functional = None if self.functional is None else [factor * v for v in self.functional]
        return TrigPoly(
            c0=factor * self.c0,
            p=[factor * v for v in self.p],
            q=[factor * v for v in self.q],
            functional=functional,
        )


class SupportCertificate(BaseModel):
    angles: List[float]
    functional: TrigPoly
    grid_size: int
    min_off_touch: float
    touch_residuals: float
    derivative_residuals: float
    curvature_margins: float
    exclusion_radii: List[float]
    tolerances: Tolerances
    passed: bool
    construction: str = "product"


class StabilitySummary(BaseModel):
    r: int
    trials: int
    delta: float
    seed: int
    min_separation: float
    passes: int
    failures: int = 0
    degenerate_trials: int
    worst_touch_residual: Optional[float] = None
    worst_derivative_residual: Optional[float] = None
    worst_curvature_margin: Optional[float] = None
    worst_min_off_touch: Optional[float] = None
