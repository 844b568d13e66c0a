"""
Brute-force oracle for flag-mode rings.

The ring Z2[x_1..x_n]/(x_i^{t_i} + rule_i) is modelled degree by degree as a
quotient vector space: the relation subspace in degree d is spanned by all
monomial multiples of the relations, and is put in reduced row echelon form
with the non-normal monomials as preferred pivots. Reducing a polynomial
against it yields its normal form without ever using the rewriting order.
"""

import logging
from collections import Counter
from itertools import combinations_with_replacement
from typing import Dict, FrozenSet, Iterable, List, Tuple

import numpy as np

from services.gf2_ring import Monomial, RingSpec
from utils.errors import InvalidInputError, NeighborlyError

logger = logging.getLogger(__name__)


def monomials_of_degree(nvars: int, d: int) -> List[Monomial]:
    result = []
    for combo in combinations_with_replacement(range(nvars), d):
        counts = Counter(combo)
        result.append(tuple(counts.get(i, 0) for i in range(nvars)))
    return result


def row_reduce_gf2(matrix: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over GF(2); returns (nonzero rows, pivot columns)."""
    m = matrix.astype(bool)
    nrows, ncols = m.shape
    pivots: List[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        hits = np.nonzero(m[row:, col])[0]
        if hits.size == 0:
            continue
        p = row + hits[0]
        if p != row:
            m[[row, p]] = m[[p, row]]
        others = np.nonzero(m[:, col])[0]
        others = others[others != row]
        m[others] ^= m[row]
        pivots.append(col)
        row += 1
    return m[:row], pivots


class QuotientOracle:
    """Normal forms in a flag-mode ring by linear algebra over GF(2)."""

    def __init__(self, ring: RingSpec):
        if ring.mode != "flag":
            raise InvalidInputError("QuotientOracle needs a flag-mode ring")
        self.ring = ring
        self._relations: List[Tuple[int, FrozenSet[Monomial]]] = []
        for i, rule in enumerate(ring.reductions):
            t = ring.truncations[i]
            lead = ring.variable_monomial(i, t)
            if any(sum(m) != t for m in rule):
                raise InvalidInputError(f"Relation for {ring.names[i]} is not homogeneous")
            self._relations.append((t, frozenset(rule) | {lead}))
        self._echelons: Dict[int, tuple] = {}

    def _echelon(self, d: int):
        if d in self._echelons:
            return self._echelons[d]
        monomials = monomials_of_degree(self.ring.nvars, d)
        non_normal = sorted(m for m in monomials if not self.ring.is_normal(m))
        normal = sorted(m for m in monomials if self.ring.is_normal(m))
        columns = non_normal + normal
        index = {m: j for j, m in enumerate(columns)}
        rows = []
        for t, relation in self._relations:
            if d < t:
                continue
            for shift in monomials_of_degree(self.ring.nvars, d - t):
                row = np.zeros(len(columns), dtype=bool)
                for m in relation:
                    row[index[tuple(a + b for a, b in zip(shift, m))]] ^= True
                rows.append(row)
        matrix = np.array(rows, dtype=bool).reshape(len(rows), len(columns))
        reduced, pivots = row_reduce_gf2(matrix)
        logger.debug(f"Oracle degree {d}: {len(columns)} monomials, relation rank {len(pivots)}")
        self._echelons[d] = (columns, index, reduced, pivots, len(non_normal))
        return self._echelons[d]

    def quotient_dimension(self, d: int) -> int:
        columns, _, _, pivots, _ = self._echelon(d)
        return len(columns) - len(pivots)

    def normal_form(self, terms: Iterable[Monomial]) -> FrozenSet[Monomial]:
        """Normal form of a GF(2) polynomial given by its (repeatable) monomials."""
        by_degree: Dict[int, Counter] = {}
        for m in terms:
            m = tuple(m)
            by_degree.setdefault(sum(m), Counter())[m] += 1
        result = set()
        for d, counts in by_degree.items():
            columns, index, reduced, pivots, n_non_normal = self._echelon(d)
            vector = np.zeros(len(columns), dtype=bool)
            for m, c in counts.items():
                if c % 2:
                    vector[index[m]] ^= True
            for row, col in zip(reduced, pivots):
                if vector[col]:
                    vector ^= row
            survivors = np.nonzero(vector)[0]
            if survivors.size and survivors[0] < n_non_normal:
                raise NeighborlyError(f"Normal monomials do not span the quotient in degree {d}")
            result.update(columns[j] for j in survivors)
        return frozenset(result)

    def top_coefficient(self, terms: Iterable[Monomial], top_monomial: Monomial) -> int:
        """Coefficient of the top normal monomial after reducing the top-degree part."""
        top = sum(top_monomial)
        selected = [tuple(m) for m in terms if sum(m) == top]
        return 1 if tuple(top_monomial) in self.normal_form(selected) else 0
