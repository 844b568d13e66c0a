"""
Supporting-hyperplane certificates for the moment embedding of the circle,

    I(α) = (sin α, cos α, ..., sin rα, cos rα) ∈ R^{2r},

and for its perturbations. A hyperplane ℓ(x) + c = 0 touching the curve at
r angles corresponds to the trigonometric polynomial T(α) = ℓ(I(α)) + c,
which must vanish to second order at those angles and be positive elsewhere.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy.linalg import null_space, svdvals

from models.moment import StabilitySummary, SupportCertificate, Tolerances, TrigPoly
from utils.errors import DegeneracyError, InvalidInputError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi


def moment_embed(alpha: float, r: int) -> np.ndarray:
    """(sin α, cos α, ..., sin rα, cos rα)."""
    if r < 1:
        raise InvalidInputError(f"moment_embed needs r >= 1, got {r}")
    m = np.arange(1, r + 1) * alpha
    return np.column_stack([np.sin(m), np.cos(m)]).ravel()


def _circular_gaps(sorted_angles: np.ndarray) -> np.ndarray:
    if len(sorted_angles) == 1:
        return np.array([TWO_PI])
    return np.diff(np.append(sorted_angles, sorted_angles[0] + TWO_PI))


def _sorted_angles(angles: Sequence[float]) -> np.ndarray:
    if len(angles) == 0:
        raise InvalidInputError("At least one touch angle is required")
    return np.sort(np.mod(np.asarray(angles, dtype=float), TWO_PI))


def _check_separated(sorted_angles: np.ndarray, tol_sep: float) -> None:
    gap = _circular_gaps(sorted_angles).min()
    if gap <= tol_sep:
        raise InvalidInputError(f"Touch angles must be distinct mod 2π; smallest gap {gap:.3e} <= {tol_sep:.1e}")


@dataclass(frozen=True)
class FourierCurve:
    """
    A closed curve in R^N whose coordinates are trigonometric polynomials:

        X_i(α) = constant[i] + Σ_m sin[i, m-1] sin mα + cos[i, m-1] cos mα.
    """

    constant: np.ndarray
    sin: np.ndarray
    cos: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.constant)

    @property
    def max_frequency(self) -> int:
        return self.sin.shape[1]

    @classmethod
    def moment(cls, r: int) -> "FourierCurve":
        if r < 1:
            raise InvalidInputError(f"The moment curve needs r >= 1, got {r}")
        sin = np.zeros((2 * r, r))
        cos = np.zeros((2 * r, r))
        for m in range(r):
            sin[2 * m, m] = 1.0
            cos[2 * m + 1, m] = 1.0
        return cls(np.zeros(2 * r), sin, cos)

    def derivative(self, alpha, order: int = 1) -> np.ndarray:
        """Derivative of the given order (0 = position), shape (len(alpha), N)."""
        alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
        m = np.arange(1, self.max_frequency + 1)
        phase = np.outer(alpha, m)
        s, c = np.sin(phase), np.cos(phase)
        # d/dα cycles sin -> cos -> -sin -> -cos with a factor m each time
        basis = [(s, c), (c, -s), (-s, -c), (-c, s)][order % 4]
        scale = m.astype(float) ** order
        values = (basis[0] * scale) @ self.sin.T + (basis[1] * scale) @ self.cos.T
        if order == 0:
            values = values + self.constant
        return values

    def evaluate(self, alpha) -> np.ndarray:
        return self.derivative(alpha, order=0)

    def perturbed(self, rng: np.random.Generator, delta: float) -> "FourierCurve":
        """Every coefficient moved by independent uniform noise in [-δ, δ]."""
        return FourierCurve(
            self.constant + rng.uniform(-delta, delta, self.constant.shape),
            self.sin + rng.uniform(-delta, delta, self.sin.shape),
            self.cos + rng.uniform(-delta, delta, self.cos.shape),
        )


def build_support_product(angles: Sequence[float], tol_sep: float = 1e-6) -> TrigPoly:
    """
    Fourier coefficients of T(α) = Π_i sin²((α - α_i)/2).

    Each factor is ½ - ¼e^{i(α-α_i)} - ¼e^{-i(α-α_i)}; the product is built
    by convolving the factors' Laurent coefficients in e^{iα}.
    """
    ordered = _sorted_angles(angles)
    _check_separated(ordered, tol_sep)
    coeffs = np.array([1.0 + 0j])
    for a in ordered:
        factor = np.array([-0.25 * np.exp(1j * a), 0.5, -0.25 * np.exp(-1j * a)])
        coeffs = np.convolve(coeffs, factor)
    r = len(ordered)
    positive = coeffs[r + 1:]
    return TrigPoly(
        c0=float(coeffs[r].real),
        p=(-2.0 * positive.imag).tolist(),
        q=(2.0 * positive.real).tolist(),
    )


def random_separated_angles(r: int, rng: np.random.Generator, min_separation: float) -> np.ndarray:
    """r sorted angles in [0, 2π) whose circular gaps are all >= min_separation."""
    slack = TWO_PI - r * min_separation
    if slack <= 0:
        raise InvalidInputError(f"Cannot place {r} angles {min_separation:.3g} apart on the circle")
    u = np.sort(rng.uniform(0.0, slack, r))
    return np.sort(np.mod(u + min_separation * np.arange(r) + rng.uniform(0.0, TWO_PI), TWO_PI))


def stratified_angles(r: int, rng: np.random.Generator, jitter: float = 0.5) -> np.ndarray:
    """
    One angle drawn uniformly from each of r equal arcs of width 2πjitter/r,
    after a random rotation. Circular gaps lie in [2π(1-jitter)/r, 2π(1+jitter)/r].
    """
    if r < 1:
        raise InvalidInputError(f"stratified_angles needs r >= 1, got {r}")
    if not 0.0 <= jitter < 1.0:
        raise InvalidInputError(f"jitter must lie in [0, 1), got {jitter}")
    offsets = jitter * rng.uniform(0.0, 1.0, r)
    return np.sort(np.mod(TWO_PI * (np.arange(r) + offsets) / r + rng.uniform(0.0, TWO_PI), TWO_PI))


class MomentVerifier:
    def __init__(self, config):
        self.config = config
        self.tolerances = Tolerances.from_config(config)
        self.grid_n = config.GRID_N
        self.nullspace_tolerance = config.NULLSPACE_TOLERANCE

    def support_from_nullspace(self, curve: FourierCurve, angles: Sequence[float]) -> TrigPoly:
        """
        Solve ℓ(X(α_i)) + c = 0, ℓ(X'(α_i)) = 0 for a unit vector (ℓ, c) and
        return T = ℓ∘X + c, signed to be non-negative at the midpoint of the
        largest gap between touch angles.
        """
        ordered = _sorted_angles(angles)
        if curve.dimension < 2 * len(ordered):
            raise InvalidInputError(
                f"A curve in R^{curve.dimension} cannot carry {len(ordered)} prescribed double touches"
            )
        positions = curve.evaluate(ordered)
        velocities = curve.derivative(ordered, 1)
        system = np.vstack([
            np.column_stack([positions, np.ones(len(ordered))]),
            np.column_stack([velocities, np.zeros(len(ordered))]),
        ])
        spectrum = svdvals(system)
        kernel = null_space(system, rcond=self.nullspace_tolerance)
        if kernel.shape[1] != 1:
            raise DegeneracyError(
                f"Support system for {len(ordered)} angles has a {kernel.shape[1]}-dimensional null space",
                spectrum.tolist(),
            )
        vector = kernel[:, 0]
        ell, c = vector[:-1], vector[-1]
        T = TrigPoly(
            c0=float(ell @ curve.constant + c),
            p=(curve.sin.T @ ell).tolist(),
            q=(curve.cos.T @ ell).tolist(),
            functional=vector.tolist(),
        )
        gaps = _circular_gaps(ordered)
        widest = int(np.argmax(gaps))
        midpoint = ordered[widest] + gaps[widest] / 2.0
        if T.evaluate(midpoint)[0] < 0:
            T = T.scaled(-1.0)
        return T

    def _touch_values(self, curve: Optional[FourierCurve], angles: np.ndarray, T: TrigPoly):
        if curve is not None and T.functional is not None:
            ell, c = np.asarray(T.functional[:-1]), T.functional[-1]
            return curve.evaluate(angles) @ ell + c, curve.derivative(angles, 1) @ ell
        return T.evaluate(angles), T.evaluate(angles, order=1)

    def verify_support(self, curve: Optional[FourierCurve], angles: Sequence[float], T: TrigPoly,
                       grid_n: Optional[int] = None, tolerances: Optional[Tolerances] = None) -> SupportCertificate:
        """Grid check that T is a supporting functional touching exactly at `angles`."""
        tol = tolerances or self.tolerances
        grid_n = grid_n or self.grid_n
        ordered = _sorted_angles(angles)
        r = len(ordered)
        if grid_n < 64 * r:
            raise InvalidInputError(f"grid_n must be at least 64·r = {64 * r}, got {grid_n}")

        values, slopes = self._touch_values(curve, ordered, T)
        curvature = T.evaluate(ordered, order=2)
        touch = float(np.max(np.abs(values)))
        derivative = float(np.max(np.abs(slopes)))
        curvature_margin = float(np.min(curvature))

        cap = 0.45 * _circular_gaps(ordered).min()
        radii = np.minimum(np.sqrt(2.0 * tol.tol_zero / np.maximum(curvature, tol.tol_curv)), cap)

        grid = TWO_PI * np.arange(grid_n) / grid_n
        distance = np.abs(grid[:, None] - ordered[None, :])
        distance = np.minimum(distance, TWO_PI - distance)
        outside = np.all(distance >= radii[None, :], axis=1)
        min_off_touch = float(np.min(T.evaluate(grid[outside])))

        passed = (
            touch <= tol.tol_eq
            and derivative <= tol.tol_eq
            and curvature_margin >= tol.tol_curv
            and min_off_touch >= tol.tol_pos - tol.positivity_slack
        )
        logger.debug(
            f"verify_support r={r}: touch={touch:.2e} slope={derivative:.2e} "
            f"curvature={curvature_margin:.2e} min_off_touch={min_off_touch:.2e} passed={passed}"
        )
        return SupportCertificate(
            angles=ordered.tolist(),
            functional=T,
            grid_size=grid_n,
            min_off_touch=min_off_touch,
            touch_residuals=touch,
            derivative_residuals=derivative,
            curvature_margins=curvature_margin,
            exclusion_radii=radii.tolist(),
            tolerances=tol,
            passed=bool(passed),
            construction="product" if T.functional is None else "nullspace",
        )

    def certify_product(self, angles: Sequence[float], grid_n: Optional[int] = None) -> SupportCertificate:
        """Product construction on the exact moment curve, verified."""
        T = build_support_product(angles, self.tolerances.tol_sep)
        return self.verify_support(None, angles, T, grid_n)

    def stability_sweep(self, r: int, trials: int, delta: float, seed: int = 0,
                        min_separation: Optional[float] = None,
                        grid_n: Optional[int] = None) -> StabilitySummary:
        """
        Perturb the moment curve `trials` times and certify a support
        functional for random well-separated touch angles on each perturbation.
        """
        if r < 1 or trials < 1:
            raise InvalidInputError(f"stability_sweep needs r, trials >= 1, got r={r}, trials={trials}")
        if delta < 0:
            raise InvalidInputError(f"Perturbation size must be non-negative, got {delta}")
        min_separation = TWO_PI / (8 * r) if min_separation is None else min_separation
        base = FourierCurve.moment(r)

        certificates: List[SupportCertificate] = []
        degenerate = 0
        for trial in range(trials):
            rng = np.random.default_rng([seed, trial])
            angles = random_separated_angles(r, rng, min_separation)
            curve = base.perturbed(rng, delta) if delta > 0 else base
            try:
                T = self.support_from_nullspace(curve, angles)
            except DegeneracyError as e:
                logger.warning(f"Trial {trial} degenerate: {e}")
                degenerate += 1
                continue
            certificates.append(self.verify_support(curve, angles, T, grid_n))

        passes = sum(1 for c in certificates if c.passed)
        logger.info(f"Stability sweep r={r} δ={delta}: {passes}/{trials} passed, {degenerate} degenerate")
        summary = StabilitySummary(
            r=r,
            trials=trials,
            delta=delta,
            seed=seed,
            min_separation=min_separation,
            passes=passes,
            failures=len(certificates) - passes,
            degenerate_trials=degenerate,
        )
        if certificates:
            summary.worst_touch_residual = max(c.touch_residuals for c in certificates)
            summary.worst_derivative_residual = max(c.derivative_residuals for c in certificates)
            summary.worst_curvature_margin = min(c.curvature_margins for c in certificates)
            summary.worst_min_off_touch = min(c.min_off_touch for c in certificates)
        return summary
