import time

import pytest

from config import Config
from services.gf2_ring import ClassElement, RingSpec, component
from services.sw_classes import (
    build_flag_ring,
    embedding_obstruction,
    rp_ring,
    theorem1_r2_check,
    theorem2_pairing,
    w_tangent_rp,
    wbar_tangent_rp,
    wbar_whitney_sum,
)
from utils.errors import InvalidInputError, NonInvertibleError
from utils.helpers import is_power_of_two

POWERS_OF_TWO = [2 ** j for j in range(9)]
LARGER_RINGS = [(16, r) for r in range(2, 7)] + [(32, r) for r in range(2, 5)]


def closed_form(n):
    return ClassElement.series(rp_ring(n), 0, range(n))


class TestTangentClasses:
    def test_w_tangent_examples(self):
        assert w_tangent_rp(2) == ClassElement.series(rp_ring(2), 0, [0, 1, 2])
        assert w_tangent_rp(4) == ClassElement.series(rp_ring(4), 0, [0, 1, 4])
        assert w_tangent_rp(1).is_unit()

    def test_w_tangent_rejects_wrong_ring(self):
        with pytest.raises(InvalidInputError):
            w_tangent_rp(3, RingSpec.truncated("α", 3))

    def test_wbar_examples(self):
        assert wbar_tangent_rp(4) == closed_form(4)
        assert wbar_tangent_rp(2) == closed_form(2)
        assert wbar_tangent_rp(3).is_unit()

    @pytest.mark.parametrize("n", POWERS_OF_TWO)
    def test_wbar_closed_form_for_powers_of_two(self, n):
        assert wbar_tangent_rp(n) == closed_form(n)

    @pytest.mark.parametrize("n,degree", [(2, 1), (4, 3), (8, 7), (3, 0), (5, 2), (6, 1)])
    def test_embedding_obstruction(self, n, degree):
        report = embedding_obstruction(n)
        assert report.obstruction_degree == degree
        assert report.non_embedding_dimension == n + degree


class TestWhitneySum:
    def test_k_plus_one_copies_of_the_line_class(self):
        for k in [2, 4, 8, 16]:
            ring = RingSpec.truncated("a", k)
            w_psi = ClassElement.series(ring, 0, [0, 1])
            assert wbar_whitney_sum([w_psi] * (k + 1), k - 1) == ClassElement.series(ring, 0, [k - 1])

    def test_trivial_bundle(self):
        ring = RingSpec.truncated("a", 5)
        assert not wbar_whitney_sum([ClassElement.unit(ring)], 3)

    def test_two_copies(self):
        ring = RingSpec.truncated("α", 3)
        one_plus = ClassElement.series(ring, 0, [0, 1])
        assert wbar_whitney_sum([one_plus, one_plus], 2) == ClassElement.series(ring, 0, [2])

    def test_rejects_non_units(self):
        ring = RingSpec.truncated("α", 3)
        with pytest.raises(NonInvertibleError):
            wbar_whitney_sum([ClassElement.series(ring, 0, [1])], 1)


class TestR2Model:
    @pytest.mark.parametrize("k", POWERS_OF_TWO[1:])
    def test_powers_of_two_pass(self, k):
        report = theorem1_r2_check(k)
        assert (report.power_identity, report.top_pairing) == (1, 1)
        assert report.theorem3_pairing == 1
        assert report.passes

    def test_non_powers_of_two_fail_power_identity(self):
        for k in range(3, 256):
            if not is_power_of_two(k):
                assert theorem1_r2_check(k).power_identity == 0, k

    def test_k_three(self):
        assert theorem1_r2_check(3).power_identity == 0

    def test_rejects_k_one(self):
        with pytest.raises(InvalidInputError):
            theorem1_r2_check(1)


class TestFlagRing:
    def test_k2_r2_relations(self):
        flag = build_flag_ring(2, 2)
        assert flag.spec.truncations == (2, 1)
        assert flag.spec.reductions[1] == frozenset({(1, 0)})
        assert ClassElement.variable(flag.spec, 1) == ClassElement.variable(flag.spec, 0)

    def test_k4_r2_relations(self):
        flag = build_flag_ring(4, 2)
        assert flag.spec.reductions[0] == frozenset()
        assert flag.spec.reductions[1] == frozenset({(1, 2), (2, 1), (3, 0)})

    def test_r1_is_projective_space(self):
        flag = build_flag_ring(6, 1)
        assert flag.spec.truncations == (6,)
        assert flag.spec.reductions == (frozenset(),)

    def test_rejects_r_above_k(self):
        with pytest.raises(InvalidInputError):
            build_flag_ring(2, 3)

    @pytest.mark.parametrize("k,r", [(5, 3), (8, 4), (4, 4)])
    def test_basis(self, k, r):
        flag = build_flag_ring(k, r)
        basis = list(flag.basis())
        expected = 1
        for i in range(1, r + 1):
            expected *= k - i + 1
        assert len(basis) == flag.basis_count == expected
        assert [m for m in basis if sum(m) == flag.top_degree] == [flag.top_monomial]
        assert flag.top_degree == k * r - r * (r + 1) // 2
        assert flag.class_degree == flag.top_degree + r

    def test_flag_relation_is_homogeneous(self):
        flag = build_flag_ring(8, 3)
        for i, rule in enumerate(flag.spec.reductions):
            assert all(sum(m) == flag.spec.truncations[i] for m in rule)
        x3 = ClassElement.variable(flag.spec, 2)
        assert component(x3, 1) == x3


class TestTheorem2Pairing:
    def test_base_case(self):
        report = theorem2_pairing(4, 1)
        assert report.value == 1
        assert report.agrees
        assert report.value_oracle == 1

    def test_k2_r2_vanishes(self):
        report = theorem2_pairing(2, 2)
        assert report.value == 0
        assert report.agrees

    def test_k4_r2_methods_agree(self):
        report = theorem2_pairing(4, 2)
        assert report.agrees
        assert report.value_rewriting == report.value_pushforward == report.value_oracle
        assert report.target_degree == 5
        assert report.class_degree == 7

    @pytest.mark.parametrize("k", [2, 4, 8, 16, 32])
    def test_r1_is_one_for_powers_of_two(self, k):
        assert theorem2_pairing(k, 1).value == 1

    @pytest.mark.parametrize("k,r", [(k, r) for k in range(1, 9) for r in range(1, k + 1)])
    def test_methods_agree_up_to_eight(self, k, r):
        report = theorem2_pairing(k, r)
        assert report.agrees, report
        if k <= 5 and r <= 3:
            assert "quotient-oracle" in report.methods
            assert report.value_oracle == report.value

    @pytest.mark.parametrize("k,r", LARGER_RINGS)
    def test_methods_agree_for_larger_rings(self, k, r):
        report = theorem2_pairing(k, r, with_oracle=False)
        assert report.value_rewriting == report.value_pushforward

    def test_larger_rings_finish_within_a_minute(self):
        start = time.perf_counter()
        for k, r in LARGER_RINGS:
            build_flag_ring.cache_clear()
            theorem2_pairing(k, r, with_oracle=False)
        assert time.perf_counter() - start < 60.0

    def test_oracle_limits_come_from_config(self, monkeypatch):
        monkeypatch.setenv("NEIGHBORLY_ORACLE_MAX_K", "3")
        config = Config()
        assert theorem2_pairing(4, 1, config=config).value_oracle is None
        assert theorem2_pairing(3, 1, config=config).value_oracle is not None
        assert theorem2_pairing(4, 1, with_oracle=True, config=config).value_oracle == 1

    def test_rejects_r_above_k(self):
        with pytest.raises(InvalidInputError):
            theorem2_pairing(2, 3)
