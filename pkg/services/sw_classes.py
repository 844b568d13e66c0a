"""
Stiefel-Whitney class formulas and characteristic-class pairings.

Covers the tangent classes of RP^n, the r = 2 model of the configuration
space B(R^k, 2) ~ RP^{k-1}, and the flag manifold Λ(k, r) of ordered
r-tuples of pairwise orthogonal lines in R^k, whose cohomology is built as
an iterated projective bundle.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence

from config import Config
from models.certificates import ObstructionReport, PairingReport, R2ModelReport
from services.flag_oracle import QuotientOracle
from services.gf2_ring import (
    ClassElement,
    Monomial,
    RingSpec,
    coefficient,
    component,
    invert,
    mul,
    power,
    substitute,
    up_to_degree,
)
from utils.errors import InvalidInputError, NonInvertibleError
from utils.helpers import is_power_of_two

logger = logging.getLogger(__name__)


def rp_ring(n: int) -> RingSpec:
    """H^*(RP^n; Z2) = Z2[α]/(α^{n+1})."""
    if n < 1:
        raise InvalidInputError(f"RP^n needs n >= 1, got {n}")
    return RingSpec.truncated("α", n + 1)


def w_tangent_rp(n: int, ring: Optional[RingSpec] = None) -> ClassElement:
    """w(TRP^n) = (1 + α)^{n+1}."""
    ring = ring or rp_ring(n)
    if ring.mode != "plain" or ring.nvars != 1 or ring.truncations[0] != n + 1:
        raise InvalidInputError(f"w(TRP^{n}) lives in Z2[α]/(α^{n + 1}), got {ring}")
    one_plus_alpha = ClassElement.series(ring, 0, [0, 1])
    return power(one_plus_alpha, n + 1)


@lru_cache(maxsize=None)
def wbar_tangent_rp(n: int) -> ClassElement:
    """w̄(TRP^n); equals 1 + α + ... + α^{n-1} when n is a power of 2."""
    return invert(w_tangent_rp(n))


def embedding_obstruction(n: int) -> ObstructionReport:
    """Top nonzero degree d of w̄(TRP^n): RP^n does not embed in R^{n+d}."""
    wbar = wbar_tangent_rp(n)
    d = wbar.degree
    return ObstructionReport(n=n, wbar=repr(wbar), obstruction_degree=d, non_embedding_dimension=n + d)


def wbar_whitney_sum(classes: Sequence[ClassElement], d: int) -> ClassElement:
    """Degree-d part of the dual class of a Whitney sum with the given total classes."""
    if not classes:
        raise InvalidInputError("wbar_whitney_sum needs at least one class")
    ring = classes[0].ring
    total = ClassElement.unit(ring)
    for w in classes:
        if not w.constant_term:
            raise NonInvertibleError(f"Total Stiefel-Whitney class must start with 1, got {w}")
        total = mul(total, w)
    return component(invert(total), d)


def theorem1_r2_check(k: int) -> R2ModelReport:
    """
    w(ψ̃)^k = 1 and the top pairing in the model B(R^k, 2) ~ RP^{k-1}, where
    ψ̃ is the tautological line bundle and w(ψ̃) = 1 + a.
    """
    if k < 2:
        raise InvalidInputError(f"The r = 2 model needs k >= 2, got {k}")
    ring = RingSpec.truncated("a", k)
    w_psi = ClassElement.series(ring, 0, [0, 1])
    top = ring.variable_monomial(0, k - 1)
    power_identity = 1 if power(w_psi, k).is_unit() else 0
    # w̄(ψ̃) = w(ψ̃)^{k-1} whenever w(ψ̃)^k = 1
    top_pairing = coefficient(power(w_psi, k - 1), top)
    # TB ⊕ ψ̃ ≅ kψ ⊕ ψ̃ and ψ ≅ ψ̃ ⊕ R, so w(TB ⊕ ψ̃) = (1 + a)^{k+1}
    theorem3 = coefficient(wbar_whitney_sum([w_psi] * (k + 1), k - 1), top)
    return R2ModelReport(
        k=k,
        k_is_power_of_two=is_power_of_two(k),
        power_identity=power_identity,
        top_pairing=top_pairing,
        theorem3_pairing=theorem3,
    )


@dataclass(frozen=True)
class FlagRing:
    """H^*(Λ(k, r); Z2) with x_i the first class of the i-th tautological line."""

    k: int
    r: int
    spec: RingSpec

    @property
    def top_degree(self) -> int:
        return sum(self.k - i for i in range(1, self.r + 1))

    @property
    def class_degree(self) -> int:
        return self.k * self.r - self.r * (self.r - 1) // 2

    @property
    def top_monomial(self) -> Monomial:
        return tuple(self.k - i for i in range(1, self.r + 1))

    def variable(self, i: int) -> ClassElement:
        return ClassElement.variable(self.spec, i)

    def basis(self) -> Iterator[Monomial]:
        def rec(prefix):
            if len(prefix) == self.r:
                yield tuple(prefix)
                return
            for e in range(self.spec.truncations[len(prefix)]):
                yield from rec(prefix + [e])
        return rec([])

    @property
    def basis_count(self) -> int:
        count = 1
        for t in self.spec.truncations:
            count *= t
        return count


def _lift(monomial: Monomial, length: int) -> Monomial:
    return tuple(monomial) + (0,) * (length - len(monomial))


@lru_cache(maxsize=None)
def build_flag_ring(k: int, r: int) -> FlagRing:
    """
    Iterated projective-bundle presentation of Λ(k, r).

    Λ(k, i) = P(V_{i-1}) over Λ(k, i-1), with V_{i-1} the rank k-i+1
    complement of the first i-1 lines and w(V_{i-1}) = Π_{m<i} (1+x_m)^{-1}.
    The Grothendieck relation reads x_i^{k-i+1} = Σ_j w_j(V_{i-1}) x_i^{k-i+1-j}.
    """
    if k < 1 or r < 1:
        raise InvalidInputError(f"Flag ring needs k, r >= 1, got k={k}, r={r}")
    if r > k:
        raise InvalidInputError(f"Flag ring needs r <= k, got k={k}, r={r}")
    names = tuple(f"x{i}" for i in range(1, r + 1))
    truncations = tuple(k - i + 1 for i in range(1, r + 1))
    reductions: List[frozenset] = []
    for i in range(r):
        t = truncations[i]
        sub = RingSpec(
            names[:i],
            truncations[:i],
            tuple(frozenset(m[:i] for m in rule) for rule in reductions),
            max_degree=t,
        )
        lower = ClassElement.unit(sub)
        for m in range(i):
            lower = mul(lower, ClassElement.series(sub, m, [0, 1]))
        w_complement = invert(lower)
        rule = set()
        for j in range(1, t + 1):
            for mono in component(w_complement, j).support:
                lifted = list(_lift(mono, r))
                lifted[i] = t - j
                rule.add(tuple(lifted))
        reductions.append(frozenset(rule))
        logger.debug(f"Flag ring k={k}: relation for {names[i]} has {len(rule)} terms")
    spec = RingSpec(names, truncations, tuple(reductions), sum(t - 1 for t in truncations))
    return FlagRing(k, r, spec)


def _free_ring(k: int, r: int, top: int) -> RingSpec:
    """Polynomial ring in x_1..x_r without relations, cut off above degree `top`."""
    bound = max(top, k) + 1
    return RingSpec.plain([(f"x{i}", bound) for i in range(1, r + 1)], max_degree=top)


def _pulled_back_tangent_classes(target: RingSpec, k: int, r: int) -> List[ClassElement]:
    wbar = wbar_tangent_rp(k)
    return [substitute(wbar, target, [ClassElement.variable(target, i)]) for i in range(r)]


def _top_degree_terms(exponents: Sequence[int], count: int, degree: int) -> set:
    """
    Monomials of total `degree` in Π_{i<count} Σ_{a in exponents} x_i^a.
    Each factor uses its own variable, so no two products coincide.
    """
    largest = max(exponents)
    partial = {()}
    for i in range(count):
        slack = largest * (count - i - 1)
        partial = {
            m + (a,)
            for m in partial
            for a in exponents
            if degree - slack <= sum(m) + a <= degree
        }
    return partial


def _pairing_by_rewriting(flag: FlagRing) -> int:
    exponents = sorted(m[0] for m in wbar_tangent_rp(flag.k).support)
    terms = _top_degree_terms(exponents, flag.r, flag.top_degree)
    return flag.spec.top_coefficient(terms)


def _push_forward(acc: ClassElement, index: int, fiber_dim: int, segre: ClassElement) -> ClassElement:
    """
    Gysin map of P(V) -> base along x_index: x^{fiber_dim + j} ↦ w̄_j(V).
    Coefficients in lower variables are pulled back from the base.
    """
    ring = acc.ring
    segre_parts = {}
    terms: set = set()
    for m in acc.support:
        j = m[index] - fiber_dim
        if j < 0:
            continue
        if j not in segre_parts:
            segre_parts[j] = component(segre, j)
        base = list(m)
        base[index] = 0
        for s in segre_parts[j].support:
            new = tuple(a + b for a, b in zip(base, s))
            if new in terms:
                terms.remove(new)
            else:
                terms.add(new)
    return ClassElement(ring, ring.normalize(terms))


def _pairing_by_pushforward(k: int, r: int, top: int) -> int:
    ring = _free_ring(k, r, top)
    factors = _pulled_back_tangent_classes(ring, k, r)
    acc = ClassElement.unit(ring)
    for i in reversed(range(r)):
        acc = mul(acc, factors[i])
        # w̄(V_i) = Π_{m<i} (1 + x_m): the complement of the first i lines
        segre = ClassElement.unit(ring)
        for m in range(i):
            segre = mul(segre, ClassElement.series(ring, m, [0, 1]))
        acc = _push_forward(acc, i, k - i - 1, segre)
        acc = up_to_degree(acc, sum(k - m - 1 for m in range(i)))
    return acc.constant_term


def _pairing_by_oracle(flag: FlagRing) -> int:
    ring = _free_ring(flag.k, flag.r, flag.top_degree)
    product = ClassElement.unit(ring)
    for factor in _pulled_back_tangent_classes(ring, flag.k, flag.r):
        product = mul(product, factor)
    oracle = QuotientOracle(flag.spec)
    return oracle.top_coefficient(product.support, flag.top_monomial)


def theorem2_pairing(k: int, r: int, with_oracle: Optional[bool] = None,
                     config: Optional[Config] = None) -> PairingReport:
    """
    ⟨[Λ(k,r)], w̄(T(RP^k)^r)|_Λ⟩ in the top degree Σ_i (k-i), computed by
    global rewriting in the flag ring and by iterated pushforward. The
    quotient oracle runs when `with_oracle` is set or, by default, when k and r
    are within the configured ORACLE_MAX_K and ORACLE_MAX_R.
    """
    if r > k:
        raise InvalidInputError(f"theorem2_pairing needs r <= k, got k={k}, r={r}")
    flag = build_flag_ring(k, r)
    value_rewriting = _pairing_by_rewriting(flag)
    value_pushforward = _pairing_by_pushforward(k, r, flag.top_degree)
    if with_oracle is None:
        config = config or Config()
        with_oracle = k <= config.ORACLE_MAX_K and r <= config.ORACLE_MAX_R
    value_oracle = _pairing_by_oracle(flag) if with_oracle else None
    methods = ["rewriting", "module-pushforward"] + (["quotient-oracle"] if with_oracle else [])
    agrees = value_rewriting == value_pushforward and value_oracle in (None, value_rewriting)
    if not agrees:
        logger.error(
            f"Pairing methods disagree for k={k}, r={r}: rewriting={value_rewriting}, "
            f"pushforward={value_pushforward}, oracle={value_oracle}"
        )
    return PairingReport(
        k=k,
        r=r,
        target_degree=flag.top_degree,
        class_degree=flag.class_degree,
        class_description=f"w̄_{flag.top_degree}(T(RP^{k})^{r}) restricted to Λ({k},{r})",
        value=value_rewriting,
        value_rewriting=value_rewriting,
        value_pushforward=value_pushforward,
        value_oracle=value_oracle,
        methods=methods,
        agrees=agrees,
    )
