"""
Lower bounds for the minimal dimension Δ(M, r) of a stably r-neighborly
embedding, one certificate per bound formula.
"""

import logging
from typing import Iterable, List, Optional

from config import Config
from models.certificates import BoundCertificate, Hypothesis, PairingReport
from services.sw_classes import embedding_obstruction, theorem2_pairing
from utils.errors import InvalidInputError
from utils.helpers import is_power_of_two

logger = logging.getLogger(__name__)

MANIFOLDS = {"euclidean": "R^k", "projective": "RP^k", "R^k": "R^k", "RP^k": "RP^k"}


def ones_count(r: int) -> int:
    """d(r): the number of ones in the binary representation of r."""
    if r < 1:
        raise InvalidInputError(f"ones_count expects r >= 1, got {r}")
    return bin(r).count("1")


def _check_positive(k: int, r: int) -> None:
    if k < 1 or r < 1:
        raise InvalidInputError(f"Bounds need k, r >= 1, got k={k}, r={r}")


def _certificate(k, r, manifold, source, hypotheses, bound=None, **extra) -> BoundCertificate:
    applicable = all(h.satisfied for h in hypotheses)
    return BoundCertificate(
        k=k,
        r=r,
        manifold=manifold,
        source=source,
        applicable=applicable,
        strict_lower_bound=bound if applicable else None,
        implied_min_dimension=bound + 1 if applicable else None,
        hypotheses=hypotheses,
        **extra,
    )


def trivial_bound(k: int, r: int) -> BoundCertificate:
    """Δ(k, r) >= (k+1)r, stored as Δ > (k+1)r - 1."""
    _check_positive(k, r)
    return _certificate(
        k, r, "any", "trivial", [],
        bound=(k + 1) * r - 1,
        formula="(k+1)r",
    )


def theorem1_bound(k: int, r: int, manifold: str = "R^k") -> BoundCertificate:
    """Δ(R^k, r) > (k+1)r + (k-1)(r - d(r)) - 1 for k a power of 2."""
    _check_positive(k, r)
    witness = (k - 1) * (r - ones_count(r))
    hypotheses = [Hypothesis(condition="k is a power of 2", satisfied=is_power_of_two(k))]
    return _certificate(
        k, r, manifold, "theorem1", hypotheses,
        bound=(k + 1) * r + witness - 1,
        scope="extends-to-generic",
        witness_dimension=witness,
        formula="(k+1)r+(k-1)(r-d(r))-1",
    )


def theorem2_bound(k: int, r: int, pairing: Optional[PairingReport] = None) -> BoundCertificate:
    """Δ(RP^k, r) > (k+1)r + kr - r(r+1)/2 - 1 for r <= k = 2^j."""
    _check_positive(k, r)
    witness = k * r - r * (r + 1) // 2
    hypotheses = [
        Hypothesis(condition="k is a power of 2", satisfied=is_power_of_two(k)),
        Hypothesis(condition="r <= k", satisfied=r <= k),
    ]
    supports = None
    if pairing is not None:
        supports = bool(pairing.agrees and pairing.value == 1)
    return _certificate(
        k, r, "RP^k", "theorem2", hypotheses,
        bound=(k + 1) * r + witness - 1,
        scope="extends-to-generic",
        witness_dimension=witness,
        formula="(k+1)r+kr-r(r+1)/2-1",
        pairing=pairing,
        pairing_supports=supports,
    )


def proposition1_value(k: int) -> BoundCertificate:
    """Δ(RP^k, 1) = 2k + 1 for k = 2^j, k >= 2."""
    if k < 1:
        raise InvalidInputError(f"proposition1_value needs k >= 1, got {k}")
    hypotheses = [
        Hypothesis(condition="k is a power of 2", satisfied=is_power_of_two(k)),
        # RP^1 is a circle and already embeds in S^1
        Hypothesis(condition="k >= 2", satisfied=k >= 2),
    ]
    if all(h.satisfied for h in hypotheses):
        obstruction = embedding_obstruction(k)
        hypotheses.append(Hypothesis(
            condition=f"w̄_{k - 1}(TRP^{k}) != 0 (RP^{k} does not embed in R^{2 * k - 1})",
            satisfied=obstruction.obstruction_degree == k - 1,
        ))
    return _certificate(
        k, 1, "RP^k", "proposition1", hypotheses,
        bound=2 * k,
        exact=True,
        formula="2k+1",
    )


def _candidates(k: int, r: int, manifold: str, audit_pairing: bool,
                config: Optional[Config]) -> List[BoundCertificate]:
    candidates = [trivial_bound(k, r), theorem1_bound(k, r, manifold)]
    if manifold == "RP^k":
        pairing = None
        if audit_pairing and is_power_of_two(k) and r <= k:
            pairing = theorem2_pairing(k, r, config=config)
        candidates.append(theorem2_bound(k, r, pairing))
        if r == 1:
            candidates.append(proposition1_value(k))
    return candidates


def best_bound(k: int, r: int, manifold: str = "R^k", audit_pairing: bool = False,
               config: Optional[Config] = None) -> BoundCertificate:
    """The strongest applicable certificate; ties go to fewer hypotheses."""
    _check_positive(k, r)
    if manifold not in MANIFOLDS:
        raise InvalidInputError(f"Unknown manifold '{manifold}'")
    manifold = MANIFOLDS[manifold]
    applicable = [c for c in _candidates(k, r, manifold, audit_pairing, config) if c.applicable]
    chosen = max(applicable, key=lambda c: (c.strict_lower_bound, -len(c.hypotheses)))
    logger.debug(f"best_bound k={k} r={r} {manifold}: {chosen.source} gives Δ > {chosen.strict_lower_bound}")
    return chosen.model_copy(update={"source": "best", "chosen_from": chosen.source, "manifold": manifold})


def bound_table(k_range: Iterable[int], r_range: Iterable[int], manifold: str = "R^k",
                audit_pairing: bool = False, config: Optional[Config] = None) -> List[BoundCertificate]:
    """best_bound for every (k, r), k-major."""
    ks, rs = list(k_range), list(r_range)
    if not ks or not rs:
        raise InvalidInputError("bound_table needs non-empty k and r ranges")
    return [best_bound(k, r, manifold, audit_pairing, config) for k in ks for r in rs]
