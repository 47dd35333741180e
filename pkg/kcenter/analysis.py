from dataclasses import dataclass
from typing import Optional, Sequence, Tuple
import math
import logging
import numpy as np

from .instance import Instance, CenterConfiguration, distance_matrix, objective, attraction_sets
from .errors import HypothesisViolated, CenterIsAttractive, BadIndex, ValidationError, DimensionMismatch
from .config import get_config
from .solvers import solve_one_center, covering_radius, exact_by_partition
from .utils import SeededSampler, parallel_map

logger = logging.getLogger(__name__)

CERTIFIED = "certified_local"
NOT_CERTIFIED = "not_certified"
COMPACT = "compact"
NONCOMPACT = "noncompact"
INCONCLUSIVE = "inconclusive"
NO_IMPROVEMENT = "no_improvement"
IMPROVEMENT_FOUND = "improvement_found"


def _finite(x : float) -> Optional[float]:
    return x if math.isfinite(x) else None


@dataclass(frozen=True)
class LocalCertificate:
    verdict : str
    singleton_ok : bool
    recenter_ok : bool
    margin : float
    stability_radius : float
    per_center : Tuple[Tuple[bool, Optional[float]], ...]
    value : float

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "singleton_ok": self.singleton_ok,
            "recenter_ok": self.recenter_ok,
            "margin": _finite(self.margin),
            "stability_radius": _finite(self.stability_radius),
            "per_center": [{"attractive": att, "gap": gap} for att, gap in self.per_center],
            "value": self.value,
        }


@dataclass(frozen=True)
class CompactnessVerdict:
    verdict : str
    k : int
    v_k : float
    v_km1 : float
    gap : float
    tolerance : float

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "k": self.k,
            "v_k": self.v_k,
            "v_km1": self.v_km1,
            "gap": self.gap,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class ProbeResult:
    verdict : str
    radius : float
    samples : int
    seed : int
    value : float
    witness : Optional[CenterConfiguration] = None
    witness_value : Optional[float] = None
    sample_index : Optional[int] = None

    @property
    def improved(self) -> bool:
        return self.verdict == IMPROVEMENT_FOUND

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "radius": self.radius,
            "samples": self.samples,
            "seed": self.seed,
            "value": self.value,
            "witness": None if self.witness is None else self.witness.tolist(),
            "witness_value": self.witness_value,
            "sample_index": None if self.sample_index is None else self.sample_index + 1,
        }


def _check_centers(inst : Instance, x : CenterConfiguration):
    if x.dimension != inst.dimension:
        raise DimensionMismatch("centers live in R^%d but the instance is in R^%d" % (x.dimension, inst.dimension))


def certify_local(inst : Instance, x : CenterConfiguration, tol_1c : Optional[float] = None, config = None) -> LocalCertificate:
    """Sufficient test for local optimality of ``x``.

    ``x`` is certified when every demand point has a unique nearest center
    (runner-up gaps at or below ``NEAR_TIE`` count as ties) and every
    attractive center is a 1-center of its attraction set to within
    ``tol_1c``. A failed test says nothing about ``x``.

    Args:
        inst: The instance.
        x: Configuration to check.
        tol_1c: Accuracy of the block 1-center solves and slack of the
            recentering test.
        config: A ``SolverConfiguration`` or ``None``.

    Returns:
        The certificate. ``stability_radius = margin / (2 ||F°||)`` is a
        per-center Euclidean radius within which no strictly better
        configuration exists when the verdict is ``certified_local``.
    """
    config = get_config(config)
    tol_1c = config.EPS if tol_1c is None else tol_1c
    _check_centers(inst, x)
    dist = distance_matrix(inst, x)

    if x.k == 1:
        margin = float("inf")
    else:
        ordered = np.sort(dist, axis=1)
        margin = float((ordered[:, 1] - ordered[:, 0]).min())
    singleton_ok = margin > config.NEAR_TIE

    view = attraction_sets(inst, x, 0.0, config)
    per_center = []
    recenter_ok = True
    for ell, members in enumerate(view.attraction):
        if len(members) == 0:
            per_center.append((False, None))
            continue
        block = inst.points[list(members)]
        ret = solve_one_center(inst.gauge, block, tol_1c, config)
        radius = covering_radius(inst.gauge, block, x[ell])
        gap = radius - ret.radius
        per_center.append((True, gap))
        if radius > ret.radius + tol_1c:
            logger.debug("Center %d covers its block within %.12g but the block 1-center radius is %.12g", ell + 1, radius, ret.radius)
            recenter_ok = False

    verdict = CERTIFIED if singleton_ok and recenter_ok else NOT_CERTIFIED
    stability = margin / (2.0 * inst.constants.polar_norm) if singleton_ok else 0.0
    value = objective(inst, x)
    logger.info("Certificate: %s (singletons %s, recentering %s, margin %.6g)", verdict, singleton_ok, recenter_ok, margin)
    return LocalCertificate(verdict, singleton_ok, recenter_ok, margin, stability, tuple(per_center), value)


def compactness_diagnostic(inst : Instance, k : int, eps : Optional[float] = None, force : bool = False, config = None) -> CompactnessVerdict:
    """Decide whether the optimal solution set for ``k`` centers is bounded.

    It is compact exactly when ``v_k < v_{k-1}``. Both values come from the
    exact oracle; gaps within ``DECISION_BAND * eps`` of zero read as equal.

    Raises:
        HypothesisViolated: unless ``m > k >= 2``.
        TooLarge: the exact oracle guard is exceeded.
    """
    config = get_config(config)
    eps = config.EPS if eps is None else eps
    if not (inst.m > k >= 2):
        raise HypothesisViolated("the compactness test needs m > k >= 2, got m = %d, k = %d" % (inst.m, k))
    v_k = exact_by_partition(inst, k, eps, force, config).value
    v_km1 = exact_by_partition(inst, k - 1, eps, force, config).value
    gap = v_km1 - v_k
    band = config.DECISION_BAND * eps
    if gap > band:
        verdict = COMPACT
    elif abs(gap) <= band:
        verdict = NONCOMPACT
    else:
        logger.warning("v_%d exceeds v_%d by %.3g, outside the band %.3g", k, k - 1, -gap, band)
        verdict = INCONCLUSIVE
    logger.info("Compactness for k = %d: %s (v_k %.12g, v_k-1 %.12g)", k, verdict, v_k, v_km1)
    return CompactnessVerdict(verdict, k, v_k, v_km1, gap, band)


def unbounded_ray_probe(inst : Instance,
        x : CenterConfiguration,
        free_center : int,
        scales : Sequence[float],
        direction = None,
        config = None,
    ) -> bool:
    """Slide a non-attractive center along ``x_l + s u`` and report whether the objective stays put.

    ``free_center`` is 0-based; ``direction`` defaults to the first axis.
    """
    config = get_config(config)
    _check_centers(inst, x)
    if not 0 <= free_center < x.k:
        raise BadIndex("center index %d out of range 1..%d" % (free_center + 1, x.k))
    view = attraction_sets(inst, x, 0.0, config)
    if len(view.attraction[free_center]) > 0:
        raise CenterIsAttractive("center %d attracts points %s" % (free_center + 1, [i + 1 for i in view.attraction[free_center]]))

    if direction is None:
        u = np.zeros(inst.dimension)
        u[0] = 1.0
    else:
        u = np.asarray(direction, dtype=np.float64).reshape(-1)
        if u.shape[0] != inst.dimension:
            raise DimensionMismatch("direction has dimension %d, expected %d" % (u.shape[0], inst.dimension))

    base = objective(inst, x)
    for s in scales:
        moved = objective(inst, x.replace(free_center, x[free_center] + s * u))
        if abs(moved - base) > config.BOUNDARY_TOLERANCE:
            logger.info("Ray probe: objective moved from %.12g to %.12g at scale %g", base, moved, s)
            return False
    return True


def perturbation_probe(inst : Instance,
        x : CenterConfiguration,
        radius : float,
        samples : int,
        seed : int = 0,
        config = None,
    ) -> ProbeResult:
    """Look for a strictly better configuration among random perturbations of ``x``.

    Every center moves by an independent uniform draw from the Euclidean ball
    of ``radius``. Sample ``j`` draws from a stream keyed on ``(seed, j)``, and
    the first improving sample is reported, so the result does not depend on
    ``WORKERS``.
    """
    config = get_config(config)
    _check_centers(inst, x)
    if not radius > 0:
        raise ValidationError("perturbation radius must be positive, got %s" % radius)
    if samples < 1:
        raise ValidationError("samples must be at least 1, got %d" % samples)

    base = objective(inst, x)
    sampler = SeededSampler(seed, inst.dimension)
    threshold = base - config.IMPROVEMENT_TOLERANCE
    workers = max(1, int(config.WORKERS))

    def scan(lane):
        for j in range(lane, samples, workers):
            cand = CenterConfiguration(x.centers + sampler.spawn(j).in_ball(radius, x.k))
            value = objective(inst, cand)
            if value < threshold:
                return j, cand, value
        return None

    found = [it for it in parallel_map(scan, range(workers), workers) if it is not None]
    if not found:
        logger.info("Perturbation probe: no improvement over %.12g in %d samples (radius %g)", base, samples, radius)
        return ProbeResult(NO_IMPROVEMENT, radius, samples, seed, base)
    j, cand, value = min(found, key=lambda it: it[0])
    logger.info("Perturbation probe: sample %d improves %.12g to %.12g", j + 1, base, value)
    return ProbeResult(IMPROVEMENT_FOUND, radius, samples, seed, base, cand, value, j)
