from dataclasses import dataclass
from typing import Optional
import numpy as np
import logging

from ..errors import DimensionMismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GaugeConstants:
    set_norm : float        # ||F|| = sup{||x|| : x in F}
    polar_norm : float      # ||F°||
    exact : bool

    @property
    def asymmetry(self) -> float:
        return self.set_norm * self.polar_norm


class Gauge:
    """Minkowski gauge of a compact convex set ``F`` with ``0 in int F``.

    Subclasses evaluate ``rho_F`` row-wise: ``evaluate`` accepts a vector of
    shape ``(d,)`` or a stack of vectors ``(..., d)`` and returns a float or
    an array of shape ``(...)``.
    """
    kind : str = None

    @property
    def dimension(self) -> Optional[int]:
        """Fixed dimension of ``F``, or ``None`` when the kind exists in every dimension."""
        return None

    def evaluate(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.float64)
        if v.ndim == 0:
            v = v.reshape(1)
        self.check_dimension(v.shape[-1])
        ret = self._evaluate(v)
        if ret.ndim == 0:
            return float(ret)
        return ret

    def __call__(self, v):
        return self.evaluate(v)

    def subgradient(self, v) -> np.ndarray:
        """An element of the subdifferential of ``rho_F`` at a single vector ``v``."""
        v = np.atleast_1d(np.asarray(v, dtype=np.float64))
        self.check_dimension(v.shape[-1])
        return self._subgradient(v)

    def supporting(self, v, tol : float = 0.0) -> np.ndarray:
        """Rows ``u`` of ``F°`` with ``<u, v> >= rho_F(v) - tol``, one per row.

        Every row satisfies ``<u, w> <= rho_F(w)`` for all ``w``, and the
        first row is a subgradient at ``v``.
        """
        v = np.atleast_1d(np.asarray(v, dtype=np.float64))
        self.check_dimension(v.shape[-1])
        return self._supporting(v, tol)

    def constants(self, d : int) -> GaugeConstants:
        self.check_dimension(d)
        return self._constants(d)

    def validate(self, d : int) -> 'Gauge':
        self.check_dimension(d)
        self._validate(d)
        return self

    def to_json(self) -> dict:
        raise NotImplementedError()

    def check_dimension(self, d : int):
        if self.dimension is not None and d != self.dimension:
            raise DimensionMismatch("gauge %s lives in dimension %d, got %d" % (self.kind, self.dimension, d))

    def _evaluate(self, v : np.ndarray) -> np.ndarray:
        raise NotImplementedError()

    def _subgradient(self, v : np.ndarray) -> np.ndarray:
        raise NotImplementedError()

    def _supporting(self, v : np.ndarray, tol : float) -> np.ndarray:
        return self._subgradient(v)[np.newaxis, :]

    def _constants(self, d : int) -> GaugeConstants:
        raise NotImplementedError()

    def _validate(self, d : int):
        pass

    def __eq__(self, other):
        return isinstance(other, Gauge) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(repr(self.to_json()))

    def __repr__(self):
        return "%s(%s)" % (self.__class__.__name__, self.to_json())


def frozen_array(x) -> np.ndarray:
    arr = np.array(x, dtype=np.float64)
    arr.setflags(write=False)
    return arr
