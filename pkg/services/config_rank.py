"""
Configuration-space numerics: the iterated-antipodal configurations L(r)
and the rank of τ(x̂), the span of the tangent spaces at r points of an
embedded manifold together with the differences of the points themselves.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy.spatial.distance import pdist

from models.configuration import Configuration, GenericitySummary, TauReport
from services.moment_verifier import FourierCurve, random_separated_angles, stratified_angles
from utils.errors import DegenerateFrameError, InvalidInputError
from utils.helpers import two_expansion

logger = logging.getLogger(__name__)

UNIT_NORM_TOLERANCE = 1e-12
CLUSTER_SPACING = 3.0
STRATIFIED_JITTER = 0.5


@dataclass(frozen=True)
class JetData:
    """
    1-jet of an embedding M^k -> R^N at r points: positions (r, N) and
    tangent frames (r, k, N).
    """

    positions: np.ndarray
    frames: np.ndarray
    frame_tolerance: float = 1e-10

    def __post_init__(self):
        if self.positions.ndim != 2 or self.frames.ndim != 3:
            raise InvalidInputError("JetData needs positions (r, N) and frames (r, k, N)")
        r, n = self.positions.shape
        if self.frames.shape[0] != r or self.frames.shape[2] != n:
            raise InvalidInputError(
                f"Frames of shape {self.frames.shape} do not match positions of shape {self.positions.shape}"
            )
        for i, frame in enumerate(self.frames):
            smallest = np.linalg.svd(frame, compute_uv=False)[-1]
            if frame.shape[0] > n or smallest <= self.frame_tolerance:
                raise DegenerateFrameError(f"Tangent frame {i} is rank deficient (σ_min = {smallest:.3e})")

    @property
    def r(self) -> int:
        return self.positions.shape[0]

    @property
    def k(self) -> int:
        return self.frames.shape[1]

    @property
    def ambient_dimension(self) -> int:
        return self.positions.shape[1]

    @classmethod
    def from_curve(cls, curve: FourierCurve, angles: Sequence[float], frame_tolerance: float = 1e-10) -> "JetData":
        angles = np.asarray(angles, dtype=float)
        return cls(curve.evaluate(angles), curve.derivative(angles, 1)[:, None, :], frame_tolerance)


def separation_lower_bound(s: int, epsilon: float) -> float:
    """
    Lower bound on pairwise distances in an L(2^s) configuration: two leaves
    splitting at depth j are 2ε^j apart, less twice the deeper offsets.
    """
    if s < 1:
        return 0.0
    bounds = [
        2 * epsilon ** j - 2 * epsilon ** (j + 1) * (1 - epsilon ** (s - 1 - j)) / (1 - epsilon)
        for j in range(s)
    ]
    return float(min(bounds))


def _cluster_radius(s: int, epsilon: float) -> float:
    return float(sum(epsilon ** j for j in range(s)))


def random_directions(k: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """`count` independent uniformly distributed unit vectors in R^k."""
    vectors = rng.standard_normal((count, k))
    return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)


def _check_lr_parameters(k: int, epsilon: float) -> None:
    if k < 2:
        raise InvalidInputError(f"L(r) configurations need k >= 2, got {k}")
    if not 0 < epsilon <= 0.5:
        raise InvalidInputError(f"ε must lie in (0, 1/2], got {epsilon}")


def _min_distance(points: np.ndarray) -> Optional[float]:
    if len(points) < 2:
        return None
    return float(pdist(points).min())


def build_lr_configuration(k: int, s: int, epsilon: float, directions, root_label: str = "A") -> Configuration:
    """
    The 2^s leaves of the iterated antipodal tree: the root spawns ±u on the
    unit sphere and a depth-j node at c spawns c ± ε^j u. `directions` holds
    one unit vector per internal node in breadth-first order.
    """
    _check_lr_parameters(k, epsilon)
    if s < 1:
        raise InvalidInputError(f"L(2^s) needs s >= 1, got {s}")
    directions = np.asarray(directions, dtype=float)
    expected = 2 ** s - 1
    if directions.shape != (expected, k):
        raise InvalidInputError(f"Expected {expected} directions in R^{k}, got shape {directions.shape}")
    norms = np.linalg.norm(directions, axis=1)
    if np.any(np.abs(norms - 1.0) > UNIT_NORM_TOLERANCE):
        raise InvalidInputError(f"Directions must be unit vectors, got norms {norms.tolist()}")

    level = [(np.zeros(k), root_label)]
    node = 0
    for depth in range(s):
        children = []
        for center, label in level:
            step = epsilon ** depth * directions[node]
            node += 1
            children.append((center + step, label + "1"))
            children.append((center - step, label + "2"))
        level = children

    points = np.array([p for p, _ in level])
    min_distance = _min_distance(points)
    bound = separation_lower_bound(s, epsilon)
    if min_distance is not None and min_distance < bound - 1e-12:
        logger.warning(f"L(2^{s}) minimum distance {min_distance} fell below its lower bound {bound}")
    return Configuration(
        k=k,
        r=2 ** s,
        epsilon=epsilon,
        points=points.tolist(),
        labels=[label for _, label in level],
        min_distance=min_distance,
        separation_bound=bound,
        translations=[0.0],
        direction_parameters=expected * (k - 1),
    )


def build_composite_configuration(k: int, r: int, epsilon: float,
                                  directions: Optional[List] = None,
                                  rng: Optional[np.random.Generator] = None) -> Configuration:
    """
    L(r) for r = 2^{t_1} + ... + 2^{t_d}: the i-th cluster is an L(2^{t_i})
    translated by (3(i-1), 0, ..., 0); a cluster with t_i = 0 is one point.
    """
    _check_lr_parameters(k, epsilon)
    if r < 2:
        raise InvalidInputError(f"Composite configurations need r >= 2, got {r}")
    exponents = two_expansion(r)
    if directions is None:
        rng = rng or np.random.default_rng(0)
        directions = [random_directions(k, 2 ** t - 1, rng) for t in exponents]
    if len(directions) != len(exponents):
        raise InvalidInputError(f"r = {r} has {len(exponents)} binary summands, got {len(directions)} direction sets")

    points, labels, translations = [], [], []
    bounds, radii = [], []
    parameters = 0
    for i, (t, dirs) in enumerate(zip(exponents, directions)):
        shift = np.zeros(k)
        shift[0] = CLUSTER_SPACING * i
        translations.append(float(shift[0]))
        root = chr(ord("A") + i)
        if t == 0:
            points.append(shift)
            labels.append(root)
            radii.append(0.0)
            continue
        cluster = build_lr_configuration(k, t, epsilon, dirs, root_label=root)
        points.extend(np.asarray(cluster.points) + shift)
        labels.extend(cluster.labels)
        bounds.append(cluster.separation_bound)
        radii.append(_cluster_radius(t, epsilon))
        parameters += cluster.direction_parameters

    for i in range(len(radii) - 1):
        gap = CLUSTER_SPACING - radii[i] - radii[i + 1]
        if gap <= 0:
            logger.warning(
                f"Clusters {chr(ord('A') + i)} and {chr(ord('A') + i + 1)} of L({r}) may overlap: "
                f"spacing {CLUSTER_SPACING} minus radii {radii[i]:.4g} and {radii[i + 1]:.4g} is {gap:.4g}"
            )
        bounds.append(gap)
    points = np.array(points)
    return Configuration(
        k=k,
        r=r,
        epsilon=epsilon,
        points=points.tolist(),
        labels=labels,
        min_distance=_min_distance(points),
        separation_bound=min(bounds) if bounds else None,
        translations=translations,
        direction_parameters=parameters,
    )


class ConfigRankService:
    def __init__(self, config):
        self.config = config
        self.rank_tolerance = config.RANK_TOLERANCE
        self.frame_tolerance = config.FRAME_TOLERANCE

    def tau_rank(self, jet: JetData, k: int, r: int, angles: Optional[Sequence[float]] = None) -> TauReport:
        """
        Numerical dimension of τ(x̂): all frame vectors plus the r-1
        differences I(x_i) - (mass center).
        """
        if jet.k != k or jet.r != r:
            raise InvalidInputError(f"Jet data has k={jet.k}, r={jet.r}; expected k={k}, r={r}")
        center = jet.positions.mean(axis=0)
        rows = [jet.frames.reshape(k * r, jet.ambient_dimension), jet.positions[: r - 1] - center]
        matrix = np.vstack(rows)
        spectrum = np.linalg.svd(matrix, compute_uv=False)
        largest = spectrum[0] if spectrum.size else 0.0
        rank = int(np.sum(spectrum > self.rank_tolerance * largest)) if largest > 0 else 0
        required = k * r + r - 1
        floor = spectrum[required - 1] if spectrum.size >= required else 0.0
        condition = float(min(largest / max(floor, np.finfo(float).tiny), np.finfo(float).max))
        return TauReport(
            rank=rank,
            required=required,
            in_omega=rank < required,
            singular_values=spectrum.tolist(),
            rank_tolerance=self.rank_tolerance,
            condition=condition,
            angles=None if angles is None else [float(a) for a in angles],
        )

    def tau_report_for_angles(self, curve: FourierCurve, angles: Sequence[float]) -> TauReport:
        jet = JetData.from_curve(curve, angles, self.frame_tolerance)
        return self.tau_rank(jet, 1, len(angles), angles)

    def genericity_sample(self, r: int, trials: int, seed: int = 0,
                          curve: Optional[FourierCurve] = None,
                          min_separation: Optional[float] = None) -> GenericitySummary:
        """
        Fraction of random touch configurations on the curve that avoid Ω.

        Angles are stratified (one per arc of width 2π/r, jittered by half an
        arc) unless `min_separation` is given, in which case they are drawn
        with random gaps of at least that size.
        """
        if r < 1 or trials < 1:
            raise InvalidInputError(f"genericity_sample needs r, trials >= 1, got r={r}, trials={trials}")
        curve = curve or FourierCurve.moment(r)
        stratified = min_separation is None
        if stratified:
            min_separation = 2 * np.pi * (1.0 - STRATIFIED_JITTER) / r
        hits = 0
        worst = 0.0
        for trial in range(trials):
            rng = np.random.default_rng([seed, trial])
            if stratified:
                angles = stratified_angles(r, rng, STRATIFIED_JITTER)
            else:
                angles = random_separated_angles(r, rng, min_separation)
            report = self.tau_report_for_angles(curve, angles)
            hits += int(report.in_omega)
            worst = max(worst, report.condition)
        logger.info(f"Genericity sample r={r}: {hits} Ω-hits in {trials} trials, worst condition {worst:.3e}")
        return GenericitySummary(
            r=r,
            trials=trials,
            seed=seed,
            min_separation=float(min_separation),
            regular_fraction=(trials - hits) / trials,
            omega_hits=hits,
            worst_condition=worst,
        )
