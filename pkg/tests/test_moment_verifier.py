import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from models.moment import SupportCertificate, TrigPoly
from services.moment_verifier import (
    FourierCurve,
    MomentVerifier,
    build_support_product,
    moment_embed,
    random_separated_angles,
    stratified_angles,
)
from utils.errors import DegeneracyError, InvalidInputError


@pytest.fixture
def verifier(config):
    return MomentVerifier(config)


def cosine(a, b):
    return abs(a @ b) / (np.linalg.norm(a) * np.linalg.norm(b))


class TestMomentEmbed:
    def test_examples(self):
        np.testing.assert_allclose(moment_embed(0.0, 2), [0, 1, 0, 1], atol=1e-15)
        np.testing.assert_allclose(moment_embed(np.pi / 2, 2), [1, 0, 0, -1], atol=1e-15)
        np.testing.assert_allclose(moment_embed(np.pi, 1), [0, -1], atol=1e-15)

    def test_curve_matches_embedding(self):
        curve = FourierCurve.moment(3)
        for alpha in [0.0, 0.7, 2.5]:
            np.testing.assert_allclose(curve.evaluate(alpha)[0], moment_embed(alpha, 3), atol=1e-15)

    def test_curve_derivatives(self):
        curve = FourierCurve.moment(2)
        alpha = 0.3
        np.testing.assert_allclose(
            curve.derivative(alpha, 1)[0],
            [np.cos(alpha), -np.sin(alpha), 2 * np.cos(2 * alpha), -2 * np.sin(2 * alpha)],
        )
        np.testing.assert_allclose(curve.derivative(alpha, 2)[0], -curve.evaluate(alpha)[0] * [1, 1, 4, 4])


class TestProductConstruction:
    def test_single_angle(self):
        T = build_support_product([0.0])
        assert T.c0 == pytest.approx(0.5)
        assert T.p == pytest.approx([0.0])
        assert T.q == pytest.approx([-0.5])

    def test_antipodal_pair(self):
        T = build_support_product([0.0, np.pi])
        assert T.c0 == pytest.approx(0.125)
        np.testing.assert_allclose(T.p, [0, 0], atol=1e-15)
        np.testing.assert_allclose(T.q, [0, -0.125], atol=1e-15)

    def test_equispaced_triple_vanishes(self):
        T = build_support_product([0.0, 2 * np.pi / 3, 4 * np.pi / 3])
        assert abs(T.evaluate(2 * np.pi / 3)[0]) < 1e-12

    def test_rejects_coincident_angles(self):
        with pytest.raises(InvalidInputError):
            build_support_product([1.0, 1.0])
        with pytest.raises(InvalidInputError):
            build_support_product([0.0, 2 * np.pi])

    def test_mean_equals_constant_term(self):
        rng = np.random.default_rng(3)
        grid = 2 * np.pi * np.arange(4096) / 4096
        for r in range(1, 11):
            T = build_support_product(random_separated_angles(r, rng, 2 * np.pi / (8 * r)))
            assert T.degree == r
            assert T.evaluate(grid).mean() == pytest.approx(T.c0, abs=1e-12)

    @given(st.lists(st.floats(0, 2 * np.pi - 0.01), min_size=1, max_size=6, unique=True), st.randoms())
    def test_permutation_invariant(self, angles, random):
        angles = sorted(angles)
        if min(np.diff(angles), default=1.0) < 1e-3:
            return
        shuffled = list(angles)
        random.shuffle(shuffled)
        assert build_support_product(angles) == build_support_product(shuffled)

    def test_rotation_rotates_coefficients(self):
        rng = np.random.default_rng(11)
        angles = random_separated_angles(4, rng, 0.2)
        beta = 0.9
        T = build_support_product(angles)
        rotated = build_support_product(angles + beta)
        m = np.arange(1, 5)
        z = (np.asarray(T.q) - 1j * np.asarray(T.p)) * np.exp(-1j * m * beta)
        np.testing.assert_allclose(rotated.q, z.real, atol=1e-12)
        np.testing.assert_allclose(rotated.p, -z.imag, atol=1e-12)
        assert rotated.c0 == pytest.approx(T.c0, abs=1e-12)


class TestNullspace:
    def test_matches_product_construction(self, verifier):
        for r in range(1, 11):
            for trial in range(100):
                rng = np.random.default_rng([r, trial])
                angles = random_separated_angles(r, rng, 2 * np.pi / (8 * r))
                T = verifier.support_from_nullspace(FourierCurve.moment(r), angles)
                product = build_support_product(angles)
                assert cosine(T.coefficient_vector(), product.coefficient_vector()) >= 1 - 1e-8

    def test_sign_normalized(self, verifier):
        T = verifier.support_from_nullspace(FourierCurve.moment(3), [0.0, 1.0, 2.0])
        assert T.evaluate(np.pi + 1.0)[0] >= 0

    def test_duplicate_angles_are_degenerate(self, verifier):
        with pytest.raises(DegeneracyError) as info:
            verifier.support_from_nullspace(FourierCurve.moment(2), [0.5, 0.5])
        assert len(info.value.spectrum) == 4

    def test_rejects_low_dimensional_curve(self, verifier):
        with pytest.raises(InvalidInputError):
            verifier.support_from_nullspace(FourierCurve.moment(1), [0.0, 1.0])

    def test_perturbed_curve_passes(self, verifier):
        rng = np.random.default_rng(5)
        angles = random_separated_angles(3, rng, 2 * np.pi / 24)
        curve = FourierCurve.moment(3).perturbed(rng, 1e-3)
        T = verifier.support_from_nullspace(curve, angles)
        assert verifier.verify_support(curve, angles, T).passed


class TestVerifySupport:
    def test_product_passes_for_every_r(self, verifier):
        for r in range(1, 13):
            rng = np.random.default_rng(r)
            angles = random_separated_angles(r, rng, 2 * np.pi / (8 * r))
            certificate = verifier.verify_support(None, angles, build_support_product(angles), 4096)
            assert certificate.passed, certificate
            assert certificate.touch_residuals <= 1e-12
            assert certificate.min_off_touch >= -1e-14

    def test_seeded_product_certificates(self, verifier):
        for r in range(1, 11):
            for trial in range(100):
                rng = np.random.default_rng([r, trial, 1])
                angles = random_separated_angles(r, rng, 2 * np.pi / (8 * r))
                certificate = verifier.certify_product(angles)
                assert certificate.passed
                assert certificate.touch_residuals <= 1e-10

    def test_negated_polynomial_fails(self, verifier):
        angles = [0.0, 2.0, 4.0]
        certificate = verifier.verify_support(None, angles, build_support_product(angles).scaled(-1.0))
        assert not certificate.passed
        assert certificate.min_off_touch < 0

    def test_zero_polynomial_fails(self, verifier):
        zero = TrigPoly(c0=0.0, p=[0.0, 0.0], q=[0.0, 0.0])
        certificate = verifier.verify_support(None, [0.0, 3.0], zero)
        assert not certificate.passed
        assert certificate.curvature_margins == 0.0

    def test_grid_must_be_fine_enough(self, verifier):
        with pytest.raises(InvalidInputError):
            verifier.verify_support(None, [0.0, 3.0], build_support_product([0.0, 3.0]), grid_n=100)

    def test_certificate_round_trips_through_json(self, verifier):
        certificate = verifier.certify_product([0.0, 2.0944, 4.1888])
        assert SupportCertificate.model_validate_json(certificate.model_dump_json()) == certificate


class TestStabilitySweep:
    def test_zero_perturbation(self, verifier):
        summary = verifier.stability_sweep(4, 100, 0.0, seed=0)
        assert summary.passes == 100
        assert summary.degenerate_trials == 0

    def test_small_perturbation(self, verifier):
        summary = verifier.stability_sweep(4, 100, 1e-3, seed=7)
        assert summary.passes == 100
        assert summary.worst_min_off_touch >= -1e-14

    def test_large_perturbation_is_reported_not_raised(self, verifier):
        summary = verifier.stability_sweep(4, 20, 0.5, seed=1)
        assert summary.trials == 20
        assert summary.passes + summary.failures + summary.degenerate_trials == 20
        if summary.degenerate_trials < 20:
            assert summary.worst_touch_residual is not None
            assert summary.worst_derivative_residual is not None
            assert summary.worst_curvature_margin is not None
            assert summary.worst_min_off_touch is not None

    def test_failed_certificates_are_counted(self, verifier, config):
        config.TOL_CURV = 1e6
        summary = MomentVerifier(config).stability_sweep(3, 5, 1e-3, seed=0)
        assert (summary.passes, summary.failures, summary.degenerate_trials) == (0, 5, 0)
        assert summary.worst_curvature_margin < 1e6

    def test_deterministic(self, verifier):
        assert verifier.stability_sweep(3, 10, 1e-3, seed=2) == verifier.stability_sweep(3, 10, 1e-3, seed=2)

    def test_rejects_bad_arguments(self, verifier):
        with pytest.raises(InvalidInputError):
            verifier.stability_sweep(0, 10, 1e-3)
        with pytest.raises(InvalidInputError):
            verifier.stability_sweep(2, 10, -1.0)


def test_random_separated_angles():
    rng = np.random.default_rng(0)
    for r in range(1, 12):
        angles = random_separated_angles(r, rng, 2 * np.pi / (8 * r))
        assert len(angles) == r
        gaps = np.diff(np.append(angles, angles[0] + 2 * np.pi))
        assert gaps.min() >= 2 * np.pi / (8 * r) - 1e-12


def test_stratified_angles():
    rng = np.random.default_rng(0)
    for r in range(1, 12):
        for _ in range(50):
            angles = stratified_angles(r, rng)
            assert len(angles) == r
            assert np.all((angles >= 0) & (angles < 2 * np.pi))
            gaps = np.diff(np.append(angles, angles[0] + 2 * np.pi))
            assert gaps.min() >= np.pi / r - 1e-12
            assert gaps.max() <= 3 * np.pi / r + 1e-12


def test_stratified_angles_rejects_bad_jitter():
    with pytest.raises(InvalidInputError):
        stratified_angles(3, np.random.default_rng(0), jitter=1.0)
