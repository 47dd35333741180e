import itertools
import logging
import numpy as np
from scipy.optimize import linprog

from .base import Gauge, GaugeConstants, frozen_array
from ..errors import ValidationError, OriginNotInterior, UnboundedSet, DimensionMismatch, DegenerateFacets

logger = logging.getLogger(__name__)

VERTEX_FEASIBILITY_TOL = 1e-9


class Interval(Gauge):
    """``F = [a, b]`` on the real line, ``a < 0 < b``."""
    kind = "interval"

    def __init__(self, a : float, b : float):
        self.a = float(a)
        self.b = float(b)
        if not (np.isfinite(self.a) and np.isfinite(self.b)):
            raise ValidationError("interval endpoints must be finite")
        if not (self.a < 0 < self.b):
            raise OriginNotInterior("interval gauge requires a < 0 < b, got [%s, %s]" % (self.a, self.b))

    @property
    def dimension(self):
        return 1

    def _evaluate(self, v):
        x = v[..., 0]
        return np.where(x >= 0, x / self.b, x / self.a)

    def _subgradient(self, v):
        if v[0] > 0:
            return np.array([1.0 / self.b])
        if v[0] < 0:
            return np.array([1.0 / self.a])
        return np.zeros(1)

    def _constants(self, d):
        return GaugeConstants(max(-self.a, self.b), max(-1.0 / self.a, 1.0 / self.b), True)

    def to_json(self):
        return {"kind": self.kind, "a": self.a, "b": self.b}


class Halfspaces(Gauge):
    """Polytope ``F = {x : <u_j, x> <= 1 for all j}`` given by its normals.

    ``rho_F(v) = max(0, max_j <u_j, v>)`` and ``F° = conv({0} | {u_j})``.
    ``||F||`` is computed by enumerating all ``d``-subsets of the normals,
    which costs ``C(J, d)`` linear solves and is meant for ``J <= 20``, ``d <= 4``.
    """
    kind = "halfspaces"

    def __init__(self, normals):
        arr = frozen_array(normals)
        if arr.ndim == 1:
            arr = frozen_array(arr.reshape(-1, 1))
        if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
            raise ValidationError("halfspace normals must be a nonempty list of vectors, got shape %s" % (arr.shape,))
        if not np.all(np.isfinite(arr)):
            raise ValidationError("halfspace normals must be finite")
        self.normals = arr
        self._vertices = None

    @property
    def dimension(self):
        return int(self.normals.shape[1])

    def _evaluate(self, v):
        vals = v @ self.normals.T
        return np.maximum(0.0, vals.max(axis=-1))

    def _subgradient(self, v):
        vals = self.normals @ v
        j = int(np.argmax(vals))
        if vals[j] <= 0:
            return np.zeros_like(v)
        return np.array(self.normals[j])

    def _supporting(self, v, tol):
        vals = self.normals @ v
        top = max(0.0, float(vals.max()))
        order = np.argsort(-vals, kind="stable")
        ret = self.normals[order[vals[order] >= top - tol]]
        if top - tol > 0:
            return ret
        # 0 belongs to F° and supports every v with rho_F(v) = 0
        zero = np.zeros((1, v.shape[0]))
        if top == 0:
            return np.vstack([zero, ret])
        return np.vstack([ret, zero])

    def _validate(self, d):
        # 0 is always interior since every right hand side is 1 > 0
        num = self.normals.shape[0]
        if num <= d:
            raise UnboundedSet("%d halfspaces cannot bound a set in dimension %d" % (num, d))
        for c in range(d):
            for sign in (1.0, -1.0):
                objective = np.zeros(d)
                objective[c] = -sign
                res = linprog(objective, A_ub=self.normals, b_ub=np.ones(num), bounds=[(None, None)] * d, method="highs")
                if res.status == 3:
                    raise UnboundedSet("normals do not positively span R^%d: support in direction %se_%d is infinite" % (d, "+" if sign > 0 else "-", c + 1))
                if res.status != 0:
                    raise UnboundedSet("support problem in direction %se_%d failed: %s" % ("+" if sign > 0 else "-", c + 1, res.message))

    def vertices(self) -> np.ndarray:
        if self._vertices is None:
            self._vertices = self._enumerate_vertices()
        return self._vertices

    def _enumerate_vertices(self) -> np.ndarray:
        num, d = self.normals.shape
        found = []
        for subset in itertools.combinations(range(num), d):
            sub = self.normals[list(subset)]
            if abs(np.linalg.det(sub)) < 1e-12:
                continue
            x = np.linalg.solve(sub, np.ones(d))
            if np.all(self.normals @ x <= 1 + VERTEX_FEASIBILITY_TOL):
                found.append(x)
        logger.debug("Vertex enumeration over %d facets in R^%d: %d vertices", num, d, len(found))
        if len(found) == 0:
            raise DegenerateFacets("no %d-subset of the %d normals yields a vertex" % (d, num))
        ret = np.unique(np.round(np.array(found), 12), axis=0)
        ret.setflags(write=False)
        return ret

    def _constants(self, d):
        polar_norm = float(np.linalg.norm(self.normals, axis=1).max())
        set_norm = float(np.linalg.norm(self.vertices(), axis=1).max())
        return GaugeConstants(set_norm, polar_norm, True)

    def as_interval(self) -> Interval:
        """The same set written as an interval, for ``d = 1``."""
        if self.dimension != 1:
            raise DimensionMismatch("only 1-d halfspace gauges are intervals, got dimension %d" % self.dimension)
        u = self.normals[:, 0]
        pos = u[u > 0]
        neg = u[u < 0]
        if pos.size == 0 or neg.size == 0:
            raise UnboundedSet("1-d halfspaces need normals of both signs")
        return Interval(1.0 / neg.min(), 1.0 / pos.max())

    def to_json(self):
        return {"kind": self.kind, "normals": self.normals.tolist()}
