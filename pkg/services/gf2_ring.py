"""
Exact arithmetic in truncated multivariate polynomial rings over GF(2).

Every generator has cohomological degree 1. A ring is described by a
RingSpec: an ordered list of variables with truncation exponents and, in
flag mode, a rewriting rule for each variable's truncation power. Elements
are ClassElement values whose support is a frozenset of exponent tuples in
normal form (coefficients are implicit: every listed monomial has
coefficient 1).
"""

import logging
from dataclasses import dataclass
from itertools import accumulate
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from utils.errors import (
    InvalidInputError,
    NonInvertibleError,
    NonNormalMonomialError,
    RingMismatchError,
)

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


def _toggle(terms: set, monomial: Monomial) -> None:
    if monomial in terms:
        terms.remove(monomial)
    else:
        terms.add(monomial)


@dataclass(frozen=True)
class RingSpec:
    """
    Description of a truncated polynomial ring over GF(2).

    In plain mode variable i satisfies x_i^{t_i} = 0. In flag mode
    `reductions[i]` is the support of the polynomial that x_i^{t_i} is
    rewritten to; it may contain x_i with exponent below t_i and any
    variables of smaller index, never a variable of larger index.
    """

    names: Tuple[str, ...]
    truncations: Tuple[int, ...]
    reductions: Optional[Tuple[FrozenSet[Monomial], ...]] = None
    max_degree: Optional[int] = None

    def __post_init__(self):
        if len(self.names) != len(self.truncations):
            raise InvalidInputError("Every variable needs exactly one truncation")
        if any(t < 1 for t in self.truncations):
            raise InvalidInputError(f"Truncations must be >= 1, got {self.truncations}")
        if self.reductions is not None:
            self._check_reductions()

    def _check_reductions(self):
        n = len(self.truncations)
        if len(self.reductions) != n:
            raise InvalidInputError("Flag mode needs one reduction polynomial per variable")
        for i, rule in enumerate(self.reductions):
            for m in rule:
                if len(m) != n:
                    raise InvalidInputError(f"Reduction monomial {m} has wrong length")
                if any(m[j] for j in range(i + 1, n)):
                    raise InvalidInputError(f"Reduction for {self.names[i]} uses a later variable: {m}")
                if not self.is_normal(m):
                    raise InvalidInputError(f"Reduction for {self.names[i]} is not in normal form: {m}")

    @classmethod
    def plain(cls, variables: Sequence[Tuple[str, int]], max_degree: Optional[int] = None) -> "RingSpec":
        names = tuple(name for name, _ in variables)
        truncations = tuple(int(t) for _, t in variables)
        return cls(names, truncations, None, max_degree)

    @classmethod
    def truncated(cls, name: str, truncation: int) -> "RingSpec":
        """Z2[name]/(name^truncation), e.g. H^*(RP^n) with truncation n+1."""
        return cls.plain([(name, truncation)])

    @property
    def mode(self) -> str:
        return "plain" if self.reductions is None else "flag"

    @property
    def nvars(self) -> int:
        return len(self.truncations)

    @property
    def top_degree(self) -> int:
        natural = sum(t - 1 for t in self.truncations)
        return natural if self.max_degree is None else min(natural, self.max_degree)

    @property
    def zero_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def is_normal(self, monomial: Monomial) -> bool:
        return len(monomial) == self.nvars and all(0 <= e < t for e, t in zip(monomial, self.truncations))

    def variable_monomial(self, index: int, exponent: int = 1) -> Monomial:
        exps = [0] * self.nvars
        exps[index] = exponent
        return tuple(exps)

    def normalize(self, terms: Iterable[Monomial]) -> FrozenSet[Monomial]:
        """Reduce a set of (possibly non-normal) monomials to normal form."""
        top = self.top_degree
        current = {m for m in terms if sum(m) <= top}
        if self.mode == "plain":
            return frozenset(m for m in current if self.is_normal(m))
        # highest-index variable first; each rewrite lowers that variable's exponent
        for i in reversed(range(self.nvars)):
            t = self.truncations[i]
            rule = self.reductions[i]
            done = set()
            pending: Dict[int, set] = {}
            for m in current:
                if m[i] >= t:
                    pending.setdefault(m[i], set()).add(m)
                else:
                    done.add(m)
            while pending:
                bucket = pending.pop(max(pending))
                for m in bucket:
                    base = list(m)
                    base[i] -= t
                    for rel in rule:
                        new = tuple(a + b for a, b in zip(base, rel))
                        if sum(new) > top:
                            continue
                        _toggle(pending.setdefault(new[i], set()) if new[i] >= t else done, new)
                pending = {e: s for e, s in pending.items() if s}
            current = done
        return frozenset(current)

    @property
    def top_monomial(self) -> Monomial:
        return tuple(t - 1 for t in self.truncations)

    def top_coefficient(self, terms: Iterable[Monomial]) -> int:
        """
        Coefficient of the top monomial in the normal form of the GF(2) sum of `terms`.

        Rewriting rules are homogeneous, so only terms of the top degree matter,
        and only monomials that can still rewrite to the top monomial are kept.
        Rewriting x_i never lowers the degree carried by the variables below
        i, so a monomial whose first p exponents already sum past the top
        monomial's first p exponents is dropped.
        """
        target = self.top_monomial
        degree = sum(target)
        if degree > self.top_degree:
            return 0
        caps = list(accumulate(target))

        def reachable(m: Monomial) -> bool:
            s = 0
            for e, cap in zip(m, caps):
                s += e
                if s > cap:
                    return False
            return True

        current: set = set()
        for m in terms:
            m = tuple(m)
            if sum(m) == degree and reachable(m):
                _toggle(current, m)
        if self.mode == "plain":
            return 1 if target in current else 0
        for i in reversed(range(self.nvars)):
            t = self.truncations[i]
            floor = target[i]
            by_exponent: Dict[int, List[Monomial]] = {}
            for rel in self.reductions[i]:
                by_exponent.setdefault(rel[i], []).append(rel)
            done: set = set()
            pending: Dict[int, set] = {}
            for m in current:
                if m[i] == floor:
                    done.add(m)
                else:
                    pending.setdefault(m[i], set()).add(m)
            while pending:
                e = max(pending)
                bucket = pending.pop(e)
                shift = e - t
                for m in bucket:
                    base = m[:i] + (shift,) + m[i + 1:]
                    for exponent, rels in by_exponent.items():
                        if shift + exponent < floor:
                            continue
                        for rel in rels:
                            new = tuple(a + b for a, b in zip(base, rel))
                            if not reachable(new):
                                continue
                            _toggle(done if new[i] == floor else pending.setdefault(new[i], set()), new)
            current = done
        return 1 if target in current else 0


@dataclass(frozen=True)
class ClassElement:
    """An element of a RingSpec; `support` holds normal-form monomials only."""

    ring: RingSpec
    support: FrozenSet[Monomial]

    @classmethod
    def from_terms(cls, ring: RingSpec, terms: Iterable[Monomial]) -> "ClassElement":
        """Sum the given monomials over GF(2) and bring the result to normal form."""
        acc: set = set()
        for m in terms:
            m = tuple(int(e) for e in m)
            if len(m) != ring.nvars or any(e < 0 for e in m):
                raise InvalidInputError(f"Monomial {m} does not fit ring {ring.names}")
            _toggle(acc, m)
        return cls(ring, ring.normalize(acc))

    @classmethod
    def zero(cls, ring: RingSpec) -> "ClassElement":
        return cls(ring, frozenset())

    @classmethod
    def unit(cls, ring: RingSpec) -> "ClassElement":
        return cls(ring, frozenset([ring.zero_monomial]))

    @classmethod
    def variable(cls, ring: RingSpec, index: int) -> "ClassElement":
        return cls.from_terms(ring, [ring.variable_monomial(index)])

    @classmethod
    def series(cls, ring: RingSpec, index: int, exponents: Iterable[int]) -> "ClassElement":
        """Sum of x_index^e over the given exponents, e.g. 1 + a + a^2."""
        return cls.from_terms(ring, [ring.variable_monomial(index, e) for e in exponents])

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __pow__(self, n):
        return power(self, n)

    def __bool__(self):
        return bool(self.support)

    @property
    def constant_term(self) -> int:
        return 1 if self.ring.zero_monomial in self.support else 0

    @property
    def degree(self) -> int:
        """Largest total degree in the support (-1 for zero)."""
        return max((sum(m) for m in self.support), default=-1)

    def is_unit(self) -> bool:
        return self.support == frozenset([self.ring.zero_monomial])

    def __repr__(self):
        if not self.support:
            return "0"
        parts = []
        for m in sorted(self.support, key=lambda m: (sum(m), m[::-1])):
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.names, m) if e
            ]
            parts.append("*".join(factors) if factors else "1")
        return " + ".join(parts)


def _require_same_ring(a: ClassElement, b: ClassElement) -> None:
    if a.ring != b.ring:
        raise RingMismatchError(f"Ring mismatch: {a.ring.names} vs {b.ring.names}")


def add(a: ClassElement, b: ClassElement) -> ClassElement:
    """Sum over GF(2): the symmetric difference of supports."""
    _require_same_ring(a, b)
    return ClassElement(a.ring, a.support ^ b.support)


def mul(a: ClassElement, b: ClassElement) -> ClassElement:
    """Product with every resulting monomial rewritten to normal form."""
    _require_same_ring(a, b)
    ring = a.ring
    if not a.support or not b.support:
        return ClassElement.zero(ring)
    top = ring.top_degree
    acc: set = set()
    for m1 in a.support:
        d1 = sum(m1)
        for m2 in b.support:
            if d1 + sum(m2) > top:
                continue
            _toggle(acc, tuple(x + y for x, y in zip(m1, m2)))
    return ClassElement(ring, ring.normalize(acc))


def power(a: ClassElement, n: int) -> ClassElement:
    if n < 0:
        return power(invert(a), -n)
    result = ClassElement.unit(a.ring)
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def component(a: ClassElement, d: int) -> ClassElement:
    """The homogeneous part of a in total degree d."""
    if d < 0:
        raise InvalidInputError(f"Degree must be non-negative, got {d}")
    return ClassElement(a.ring, frozenset(m for m in a.support if sum(m) == d))


def up_to_degree(a: ClassElement, d: int) -> ClassElement:
    return ClassElement(a.ring, frozenset(m for m in a.support if sum(m) <= d))


def coefficient(a: ClassElement, monomial: Sequence[int]) -> int:
    """1 if the normal-form monomial occurs in a, else 0."""
    monomial = tuple(monomial)
    if not a.ring.is_normal(monomial):
        raise NonNormalMonomialError(f"Monomial {monomial} is not in normal form for {a.ring.names}")
    return 1 if monomial in a.support else 0


def invert(a: ClassElement) -> ClassElement:
    """
    Multiplicative inverse of a unit, built degree by degree.

    In characteristic 2 the degree-d part of the inverse u is the degree-d
    part of (a - 1) * u, which only involves parts of u of lower degree.
    """
    if not a.constant_term:
        raise NonInvertibleError(f"Element with zero constant term is not invertible: {a}")
    ring = a.ring
    top = ring.top_degree
    a_parts = [component(a, j) for j in range(top + 1)]
    u_parts: List[ClassElement] = [ClassElement.unit(ring)]
    for d in range(1, top + 1):
        terms: set = set()
        for j in range(1, d + 1):
            if a_parts[j] and u_parts[d - j]:
                terms ^= mul(a_parts[j], u_parts[d - j]).support
        u_parts.append(ClassElement(ring, frozenset(terms)))
    support: FrozenSet[Monomial] = frozenset()
    for part in u_parts:
        support = support ^ part.support
    return ClassElement(ring, support)


def substitute(a: ClassElement, target: RingSpec, images: Sequence[ClassElement]) -> ClassElement:
    """
    Apply the ring homomorphism sending variable j of a.ring to images[j].
    """
    if len(images) != a.ring.nvars:
        raise InvalidInputError(f"Need {a.ring.nvars} images, got {len(images)}")
    for image in images:
        if image.ring != target:
            raise RingMismatchError("Every image must live in the target ring")
    powers: Dict[Tuple[int, int], ClassElement] = {}

    def image_power(j: int, e: int) -> ClassElement:
        if (j, e) not in powers:
            powers[(j, e)] = ClassElement.unit(target) if e == 0 else mul(image_power(j, e - 1), images[j])
        return powers[(j, e)]

    terms: set = set()
    for m in a.support:
        value = ClassElement.unit(target)
        for j, e in enumerate(m):
            if e:
                value = mul(value, image_power(j, e))
        terms ^= value.support
    return ClassElement(target, frozenset(terms))


def binom_parity(n: int, m: int) -> int:
    """C(n, m) mod 2: 1 iff every binary digit of m is at most that of n."""
    if n < 0 or m < 0:
        raise InvalidInputError("binom_parity expects non-negative arguments")
    if m > n:
        return 0
    return 1 if m & ~n == 0 else 0
