from dataclasses import dataclass
from typing import Optional
import math
import logging
import numpy as np

from ..gauge import Gauge, Euclidean
from ..instance import Instance, CenterConfiguration, objective
from ..errors import WitnessNotFound, DegenerateRadius, WrongGaugeKind, WrongDimension, NumericalError
from ..config import get_config
from ..utils import SeededSampler, as_points
from .one_center import one_center_euclidean, one_center_1d, as_interval
from .k_center import SolveReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwoCenterBound:
    witness_w : np.ndarray
    epsilon_bar : float
    r1 : float
    bound : float
    centers : CenterConfiguration
    evaluated : float

    def to_json(self) -> dict:
        return {
            "witness_w": self.witness_w.tolist(),
            "epsilon_bar": self.epsilon_bar,
            "r1": self.r1,
            "bound": self.bound,
            "centers": self.centers.tolist(),
            "evaluated": self.evaluated,
        }


def _is_witness(points : np.ndarray, norms : np.ndarray, w : np.ndarray, rel_tol : float) -> bool:
    proj = np.abs(points @ w)
    nonzero = norms > 0
    return bool(np.all(proj[nonzero] >= rel_tol * norms[nonzero]))


def hyperplane_witness(points, seed : int = 0, config = None) -> np.ndarray:
    """A unit vector ``w`` with ``<a_i, w> != 0`` for every nonzero ``a_i``.

    The hyperplane ``w^perp`` then misses every nonzero point. Coordinate axes
    are tried first, then seeded uniform directions; a direction is rejected when
    some ``|<a_i, w>|`` falls below ``WITNESS_RELATIVE_TOLERANCE * ||a_i||``.

    Raises:
        WitnessNotFound: ``WITNESS_DRAWS`` random directions were all rejected.
    """
    config = get_config(config)
    points = as_points(points)
    d = points.shape[1]
    norms = np.linalg.norm(points, axis=1)
    rel_tol = config.WITNESS_RELATIVE_TOLERANCE

    for c in range(d):
        w = np.zeros(d)
        w[c] = 1.0
        if _is_witness(points, norms, w, rel_tol):
            return w

    sampler = SeededSampler(seed, d)
    for draw in range(config.WITNESS_DRAWS):
        w = sampler.unit_vector()
        if _is_witness(points, norms, w, rel_tol):
            logger.debug("Witness accepted after %d draws", draw + 1)
            return w
    logger.warning("No hyperplane witness in %d draws", config.WITNESS_DRAWS)
    raise WitnessNotFound("no direction separated all %d points from a hyperplane in %d draws" % (points.shape[0], config.WITNESS_DRAWS))


def two_center_split_bound(points, eps1 : Optional[float] = None, seed : int = 0, config = None) -> TwoCenterBound:
    """Constructive Euclidean 2-center bound strictly below the 1-center radius.

    Translate so the 1-center sits at the origin and take a witness ``w``. With
    ``eps_i = r / sqrt(2)`` for ``a_i = 0`` and ``|<a_i, w>| / 2`` otherwise,
    every point lies in one of the balls ``B[+-eps w, sqrt(r^2 - eps^2)]``
    where ``eps = min_i eps_i``.
    """
    config = get_config(config)
    eps1 = config.EPS if eps1 is None else eps1
    points = as_points(points)
    m = points.shape[0]
    if m < 2:
        raise DegenerateRadius("a single point has 1-center radius 0; no strict improvement exists")

    one = one_center_euclidean(points, eps1, config)
    r1 = one.radius
    if r1 <= 0:
        raise DegenerateRadius("1-center radius is 0")
    shifted = points - one.center
    w = hyperplane_witness(shifted, seed, config)

    norms = np.linalg.norm(shifted, axis=1)
    eps_i = np.where(norms == 0, r1 / math.sqrt(2), np.abs(shifted @ w) / 2)
    epsilon_bar = float(eps_i.min())
    bound = math.sqrt(r1 * r1 - epsilon_bar * epsilon_bar)
    centers = CenterConfiguration(np.stack([one.center + epsilon_bar * w, one.center - epsilon_bar * w]))

    inst = Instance(points, Euclidean(), points.shape[1])
    evaluated = objective(inst, centers)
    if evaluated > bound + eps1:
        raise NumericalError("split construction evaluates to %.12g above its bound %.12g" % (evaluated, bound))
    logger.info("Split bound: r1 %.9g, eps_bar %.6g, bound %.9g, evaluated %.9g", r1, epsilon_bar, bound, evaluated)
    return TwoCenterBound(w, epsilon_bar, r1, bound, centers, evaluated)


def two_center_1d(g : Gauge, points) -> SolveReport:
    """Closed-form 2-center configuration on the line beating the 1-center radius.

    For ``F = [a, b]`` and extreme points ``p1 < p2``, let ``p3`` be the
    smallest point other than ``p1``. The centers ``x1 = p1`` and
    ``x2 = (b p2 - a p3) / (b - a)`` cover every point within
    ``(p2 - p3) / (b - a)``, which is strictly below the 1-center radius when
    ``m >= 3``.
    """
    interval = as_interval(g)
    points = as_points(points)
    if points.shape[1] != 1:
        raise WrongDimension("two_center_1d works on the line, got dimension %d" % points.shape[1])
    if interval is None:
        raise WrongGaugeKind("two_center_1d needs a gauge on the line, got %s" % g.kind)
    inst = Instance(points, interval, 1)
    m = inst.m
    if m <= 2:
        centers = CenterConfiguration(np.stack([points[0], points[-1]]))
        return SolveReport(objective(inst, centers), centers, "split_1d", 0.0, 0, tuple((i,) for i in range(m)))

    order = np.argsort(points[:, 0], kind="stable")
    p1, p3, p2 = int(order[0]), int(order[1]), int(order[-1])
    a, b = interval.a, interval.b
    low, mid, high = float(points[p1, 0]), float(points[p3, 0]), float(points[p2, 0])
    centers = CenterConfiguration([[low], [(b * high - a * mid) / (b - a)]])
    value = objective(inst, centers)
    r1 = one_center_1d(interval, points).radius
    logger.info("1-d split: r2 %.9g < r1 %.9g", value, r1)
    blocks = ((p1,), tuple(int(i) for i in order[1:]))
    return SolveReport(value, centers, "split_1d", 0.0, 0, blocks)
