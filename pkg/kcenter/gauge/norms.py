import math
import numpy as np

from .base import Gauge, GaugeConstants, frozen_array
from ..errors import ValidationError, OriginNotInterior


class Euclidean(Gauge):
    kind = "euclidean"

    def _evaluate(self, v):
        return np.linalg.norm(v, axis=-1)

    def _subgradient(self, v):
        norm = np.linalg.norm(v)
        if norm == 0:
            return np.zeros_like(v)
        return v / norm

    def _constants(self, d):
        return GaugeConstants(1.0, 1.0, True)

    def to_json(self):
        return {"kind": self.kind}


class Lp(Gauge):
    kind = "lp"

    def __init__(self, p : float):
        self.p = float(p)
        if not (self.p > 1 and math.isfinite(self.p)):
            raise ValidationError("lp gauge requires 1 < p < inf, got %s" % p)

    @property
    def conjugate(self) -> float:
        return self.p / (self.p - 1)

    def _evaluate(self, v):
        a = np.abs(v)
        # scale out the max to keep |v|^p finite
        mx = a.max(axis=-1, keepdims=True)
        safe = np.where(mx == 0, 1.0, mx)
        ret = np.squeeze(safe, -1) * np.sum((a / safe) ** self.p, axis=-1) ** (1.0 / self.p)
        return np.where(np.squeeze(mx, -1) == 0, 0.0, ret)

    def _subgradient(self, v):
        norm = float(self._evaluate(v))
        if norm == 0:
            return np.zeros_like(v)
        return np.sign(v) * (np.abs(v) / norm) ** (self.p - 1)

    @staticmethod
    def _ball_norm(p : float, d : int) -> float:
        # sup of ||x||_2 over the unit l_p ball
        if p >= 2:
            return d ** (0.5 - 1.0 / p)
        return 1.0

    def _constants(self, d):
        return GaugeConstants(self._ball_norm(self.p, d), self._ball_norm(self.conjugate, d), True)

    def to_json(self):
        return {"kind": self.kind, "p": self.p}


class LInf(Gauge):
    kind = "linf"

    def _evaluate(self, v):
        return np.abs(v).max(axis=-1)

    def _subgradient(self, v):
        ret = np.zeros_like(v)
        a = np.abs(v)
        if a.max() == 0:
            return ret
        c = int(np.argmax(a))
        ret[c] = np.sign(v[c])
        return ret

    def _constants(self, d):
        return GaugeConstants(math.sqrt(d), 1.0, True)

    def to_json(self):
        return {"kind": self.kind}


class Box(Gauge):
    kind = "box"

    def __init__(self, radii):
        self.radii = frozen_array(radii).reshape(-1)
        if self.radii.size == 0:
            raise ValidationError("box gauge needs at least one radius")
        if not np.all(np.isfinite(self.radii)):
            raise ValidationError("box radii must be finite")
        if np.any(self.radii <= 0):
            raise OriginNotInterior("box radii must be positive, got %s" % self.radii.tolist())

    @property
    def dimension(self):
        return int(self.radii.size)

    def _evaluate(self, v):
        return (np.abs(v) / self.radii).max(axis=-1)

    def _subgradient(self, v):
        ret = np.zeros_like(v)
        a = np.abs(v) / self.radii
        if a.max() == 0:
            return ret
        c = int(np.argmax(a))
        ret[c] = np.sign(v[c]) / self.radii[c]
        return ret

    def _constants(self, d):
        return GaugeConstants(float(np.linalg.norm(self.radii)), float(np.max(1.0 / self.radii)), True)

    def to_json(self):
        return {"kind": self.kind, "radii": self.radii.tolist()}
