# models/certificates.py
from typing import List, Literal, Optional

from pydantic import BaseModel, model_validator

Source = Literal["trivial", "theorem1", "theorem2", "proposition1", "best"]
Manifold = Literal["R^k", "RP^k", "any"]


class Hypothesis(BaseModel):
    condition: str
    satisfied: bool


class PairingReport(BaseModel):
    """Evaluation of w̄(T(RP^k)^r) restricted to the flag manifold on its fundamental class."""

    k: int
    r: int
    target_degree: int
    class_degree: int
    class_description: str
    value: int
    value_rewriting: int
    value_pushforward: int
    value_oracle: Optional[int] = None
    methods: List[str]
    agrees: bool


class R2ModelReport(BaseModel):
    """Checks in H^*(B(R^k,2)) = Z2[a]/(a^k) with w(ψ̃) = 1 + a."""

    k: int
    k_is_power_of_two: bool
    power_identity: int
    top_pairing: int
    theorem3_pairing: int

    @property
    def passes(self) -> bool:
        return self.power_identity == 1 and self.top_pairing == 1


class ObstructionReport(BaseModel):
    n: int
    wbar: str
    obstruction_degree: int
    non_embedding_dimension: int


class BoundCertificate(BaseModel):
    k: int
    r: int
    manifold: Manifold
    source: Source
    applicable: bool
    strict_lower_bound: Optional[int] = None
    implied_min_dimension: Optional[int] = None
    exact: bool = False
    scope: Literal["stable-only", "extends-to-generic"] = "stable-only"
    witness_dimension: Optional[int] = None
    formula: str = ""
    hypotheses: List[Hypothesis] = []
    chosen_from: Optional[Source] = None
    pairing: Optional[PairingReport] = None
    pairing_supports: Optional[bool] = None

    @model_validator(mode="after")
    def _consistent(self):
        if self.applicable:
            if self.strict_lower_bound is None or self.implied_min_dimension != self.strict_lower_bound + 1:
                raise ValueError("implied_min_dimension must equal strict_lower_bound + 1")
            if not all(h.satisfied for h in self.hypotheses):
                raise ValueError("an applicable certificate cannot list an unsatisfied hypothesis")
        elif all(h.satisfied for h in self.hypotheses):
            raise ValueError("an inapplicable certificate needs an unsatisfied hypothesis")
        return self
