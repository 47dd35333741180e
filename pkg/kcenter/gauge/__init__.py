from typing import Any, Dict
import numpy as np

from .base import Gauge, GaugeConstants
from .norms import Euclidean, Lp, LInf, Box
from .polytope import Interval, Halfspaces
from ..errors import ValidationError, InstanceParseError, NegativeRadius
from ..config import get_config

GAUGE_KINDS = {
    "euclidean": Euclidean,
    "lp": Lp,
    "linf": LInf,
    "box": Box,
    "interval": Interval,
    "halfspaces": Halfspaces,
}


def gauge_from_json(obj : Dict[str, Any]) -> Gauge:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InstanceParseError("gauge must be an object with a 'kind' field, got %r" % (obj,))
    kind = obj["kind"]
    if kind not in GAUGE_KINDS:
        raise InstanceParseError("unknown gauge kind %r (expected one of %s)" % (kind, ", ".join(GAUGE_KINDS)))
    try:
        if kind == "lp":
            return Lp(obj["p"])
        if kind == "box":
            return Box(obj["radii"])
        if kind == "interval":
            return Interval(obj["a"], obj["b"])
        if kind == "halfspaces":
            return Halfspaces(obj["normals"])
    except KeyError as e:
        raise InstanceParseError("gauge %s is missing field %s" % (kind, e))
    except (TypeError, ValueError) as e:
        if isinstance(e, ValidationError):
            raise
        raise InstanceParseError("gauge %s is malformed: %s" % (kind, e))
    return GAUGE_KINDS[kind]()


def validate_gauge(g : Gauge, d : int) -> Gauge:
    """Check that ``g`` describes a compact convex set with 0 in its interior in ``R^d``.

    Raises:
        UnboundedSet: halfspace normals do not positively span ``R^d``.
        OriginNotInterior: an interval or box does not contain 0 in its interior.
        DimensionMismatch: ``g`` is tied to another dimension.
    """
    if not isinstance(g, Gauge):
        raise ValidationError("expected a Gauge, got %s" % type(g).__name__)
    return g.validate(d)


def gauge_eval(g : Gauge, v) -> float:
    return g.evaluate(v)


def constants_of(g : Gauge, d : int) -> GaugeConstants:
    return g.constants(d)


def asymmetry_bound_check(g : Gauge, v, config = None) -> bool:
    """Whether ``rho(v) <= ||F|| ||F°|| rho(-v)`` holds (up to the boundary tolerance)."""
    config = get_config(config)
    v = np.atleast_1d(np.asarray(v, dtype=np.float64))
    c = g.constants(v.shape[-1])
    return bool(g.evaluate(v) <= c.asymmetry * g.evaluate(-v) + config.BOUNDARY_TOLERANCE)


def generalized_ball_contains(g : Gauge, center, radius : float, y, config = None) -> bool:
    """Membership of ``y`` in ``B_F[center, radius] = {y : rho(y - center) <= radius}``."""
    config = get_config(config)
    if radius < 0:
        raise NegativeRadius("radius must be nonnegative, got %s" % radius)
    diff = np.atleast_1d(np.asarray(y, dtype=np.float64)) - np.atleast_1d(np.asarray(center, dtype=np.float64))
    return bool(g.evaluate(diff) <= radius + config.BOUNDARY_TOLERANCE)
