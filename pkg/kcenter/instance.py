from dataclasses import dataclass
from typing import Optional, Sequence, Tuple
import logging
import numpy as np

from .gauge import Gauge, GaugeConstants, validate_gauge
from .errors import DimensionMismatch, DuplicatePoints, ValidationError, BadIndex
from .config import get_config

logger = logging.getLogger(__name__)


class Instance:
    """Demand points ``a_1, ..., a_m`` in ``R^d`` together with the gauge ``rho_F``."""

    def __init__(self, points, gauge : Gauge, dimension : Optional[int] = None):
        arr = np.array(points, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1) if dimension in (None, 1) else arr.reshape(1, -1)
        if arr.ndim != 2 or arr.shape[0] == 0:
            raise ValidationError("an instance needs at least one point, got shape %s" % (arr.shape,))
        if dimension is None:
            dimension = arr.shape[1]
        if dimension <= 0:
            raise ValidationError("dimension must be positive, got %d" % dimension)
        if arr.shape[1] != dimension:
            raise DimensionMismatch("points have dimension %d but the instance declares %d" % (arr.shape[1], dimension))
        if not np.all(np.isfinite(arr)):
            raise ValidationError("demand points must be finite")

        seen = {}
        for i, row in enumerate(arr):
            key = tuple(row.tolist())
            if key in seen:
                raise DuplicatePoints(seen[key], i)
            seen[key] = i

        arr.setflags(write=False)
        self.points = arr
        self.dimension = int(dimension)
        self.gauge = validate_gauge(gauge, self.dimension)
        self._constants = None

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def constants(self) -> GaugeConstants:
        if self._constants is None:
            self._constants = self.gauge.constants(self.dimension)
        return self._constants

    def restrict(self, indices : Sequence[int]) -> 'Instance':
        return Instance(self.points[list(indices)], self.gauge, self.dimension)

    def __repr__(self):
        return "Instance(m=%d, d=%d, gauge=%s)" % (self.m, self.dimension, self.gauge.kind)


class CenterConfiguration:
    """An ordered list of ``k`` centers, not necessarily distinct."""

    def __init__(self, centers, dimension : Optional[int] = None):
        arr = np.array(centers, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1) if dimension in (None, 1) else arr.reshape(1, -1)
        if arr.ndim != 2 or arr.shape[0] == 0:
            raise ValidationError("a configuration needs at least one center, got shape %s" % (arr.shape,))
        if dimension is not None and arr.shape[1] != dimension:
            raise DimensionMismatch("centers have dimension %d, expected %d" % (arr.shape[1], dimension))
        if not np.all(np.isfinite(arr)):
            raise ValidationError("centers must be finite")
        arr.setflags(write=False)
        self.centers = arr

    @property
    def k(self) -> int:
        return self.centers.shape[0]

    @property
    def dimension(self) -> int:
        return self.centers.shape[1]

    def __getitem__(self, ell):
        return self.centers[ell]

    def __len__(self):
        return self.k

    def replace(self, ell : int, center) -> 'CenterConfiguration':
        arr = np.array(self.centers)
        arr[ell] = center
        return CenterConfiguration(arr)

    def prefix(self, k : int) -> 'CenterConfiguration':
        return CenterConfiguration(self.centers[:k])

    def tolist(self):
        return self.centers.tolist()

    def __repr__(self):
        return "CenterConfiguration(%s)" % self.centers.tolist()


@dataclass(frozen=True)
class DCComponents:
    g : np.ndarray          # (m,)   g_i = sum_r rho(x_r - a_i)
    h : np.ndarray          # (m,)   h_i = max_l h_{i,l}
    h_partial : np.ndarray  # (m, k) h_{i,l} = sum_{r != l} rho(x_r - a_i)

    @property
    def difference(self) -> np.ndarray:
        return self.g - self.h

    @property
    def value(self) -> float:
        return float(np.max(self.difference))


@dataclass(frozen=True)
class ClusteringView:
    attraction : Tuple[Tuple[int, ...], ...]
    active_sets : Tuple[Tuple[int, ...], ...]
    tie_tolerance : float
    natural_blocks : Optional[Tuple[Tuple[int, ...], ...]] = None

    @property
    def attractive(self) -> Tuple[bool, ...]:
        return tuple(len(it) > 0 for it in self.attraction)

    def to_json(self) -> dict:
        # 1-based indices for users
        ret = {
            "attraction": [[i + 1 for i in it] for it in self.attraction],
            "active_sets": [[l + 1 for l in it] for it in self.active_sets],
            "tie_tolerance": self.tie_tolerance,
        }
        if self.natural_blocks is not None:
            ret["natural_blocks"] = [[i + 1 for i in it] for it in self.natural_blocks]
        return ret


def _check(inst : Instance, x : CenterConfiguration):
    if x.dimension != inst.dimension:
        raise DimensionMismatch("centers live in R^%d but the instance is in R^%d" % (x.dimension, inst.dimension))


def distance_matrix(inst : Instance, x : CenterConfiguration) -> np.ndarray:
    """``D[i, l] = rho_F(x_l - a_i)``, shape ``(m, k)``."""
    _check(inst, x)
    diff = x.centers[np.newaxis, :, :] - inst.points[:, np.newaxis, :]
    return np.asarray(inst.gauge.evaluate(diff)).reshape(inst.m, x.k)


def objective(inst : Instance, x : CenterConfiguration) -> float:
    """``f_k(x) = max_i min_l rho_F(x_l - a_i)``."""
    return float(distance_matrix(inst, x).min(axis=1).max())


def dc_components(inst : Instance, x : CenterConfiguration) -> DCComponents:
    dist = distance_matrix(inst, x)
    g = dist.sum(axis=1)
    h_partial = g[:, np.newaxis] - dist
    h = h_partial.max(axis=1)
    return DCComponents(g, h, h_partial)


def _active_from(dist : np.ndarray, tol : float) -> Tuple[Tuple[int, ...], ...]:
    best = dist.min(axis=1, keepdims=True)
    mask = dist <= best + tol
    return tuple(tuple(int(l) for l in np.flatnonzero(row)) for row in mask)


def _check_tol(tol : float):
    if tol < 0:
        raise ValidationError("tie tolerance must be nonnegative, got %s" % tol)


def active_sets(inst : Instance, x : CenterConfiguration, tol : Optional[float] = None, config = None) -> Tuple[Tuple[int, ...], ...]:
    """``J_i(x)``: for every demand point, the centers attaining its minimum distance (0-based)."""
    tol = get_config(config).TIE_TOLERANCE if tol is None else tol
    _check_tol(tol)
    return _active_from(distance_matrix(inst, x), tol)


def _transpose(active : Sequence[Tuple[int, ...]], k : int) -> Tuple[Tuple[int, ...], ...]:
    ret = [[] for _ in range(k)]
    for i, js in enumerate(active):
        for l in js:
            ret[l].append(i)
    return tuple(tuple(it) for it in ret)


def attraction_sets(inst : Instance, x : CenterConfiguration, tol : Optional[float] = None, config = None) -> ClusteringView:
    """Attraction sets ``A[x_l]``; a center whose set is empty is not attractive."""
    tol = get_config(config).TIE_TOLERANCE if tol is None else tol
    _check_tol(tol)
    active = _active_from(distance_matrix(inst, x), tol)
    return ClusteringView(_transpose(active, x.k), active, tol)


def natural_clustering(inst : Instance, x : CenterConfiguration, tol : Optional[float] = None, config = None) -> ClusteringView:
    """Attraction sets made disjoint by handing ties to the smallest center index."""
    view = attraction_sets(inst, x, tol, config)
    taken = set()
    blocks = []
    for members in view.attraction:
        block = tuple(i for i in members if i not in taken)
        taken.update(block)
        blocks.append(block)
    return ClusteringView(view.attraction, view.active_sets, view.tie_tolerance, tuple(blocks))


def clamp_radius(inst : Instance, i0 : int = 0) -> float:
    """``(1 + ||F|| ||F°||) rho`` with ``rho = max_i rho_F(a_i0 - a_i)``."""
    if not 0 <= i0 < inst.m:
        raise BadIndex("point index %d out of range 1..%d" % (i0 + 1, inst.m))
    rho = float(np.max(inst.gauge.evaluate(inst.points[i0] - inst.points)))
    return (1.0 + inst.constants.asymmetry) * rho
