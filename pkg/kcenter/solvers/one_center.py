from dataclasses import dataclass
from typing import Optional, Tuple
import math
import logging
import numpy as np
from scipy.optimize import nnls

from ..gauge import Gauge, Euclidean, Lp, LInf, Box, Interval, Halfspaces
from ..errors import WrongGaugeKind, WrongDimension, DimensionTooLarge, NonConvergence, ValidationError
from ..config import get_config
from ..utils import as_points

logger = logging.getLogger(__name__)

CORESET_MAX_ITERATIONS = 200000

ONE_CENTER_METHODS = (
    "analytic1d",           # closed form on the line
    "analytic_box",         # per-axis midrange for box and linf gauges
    "euclidean_exact",      # support points, d <= 2
    "euclidean_iterative",  # core-set steps
    "subgradient",
    "grid_oracle",
)


@dataclass(frozen=True)
class OneCenterResult:
    """A 1-center and its covering radius.

    ``method`` is one of ``ONE_CENTER_METHODS``; ``accuracy`` bounds the
    excess of ``radius`` over the optimal radius.
    """
    center : np.ndarray
    radius : float
    method : str
    accuracy : float

    def to_json(self) -> dict:
        return {
            "center": self.center.tolist(),
            "radius": self.radius,
            "method": self.method,
            "accuracy": self.accuracy,
        }


def covering_radius(g : Gauge, points : np.ndarray, center : np.ndarray) -> float:
    """``f_1(center) = max_i rho_F(center - a_i)``."""
    return float(np.max(g.evaluate(center[np.newaxis, :] - points)))


def _finish(g : Gauge, points : np.ndarray, center, method : str, accuracy : float) -> OneCenterResult:
    center = np.array(center, dtype=np.float64).reshape(-1)
    center.setflags(write=False)
    return OneCenterResult(center, covering_radius(g, points, center), method, float(accuracy))


def _nonempty(points) -> np.ndarray:
    points = as_points(points)
    if points.shape[0] == 0:
        raise ValidationError("the 1-center problem needs at least one point")
    return points


def as_interval(g : Gauge) -> Optional[Interval]:
    """The interval ``F`` of a gauge on the real line, or ``None`` if ``g`` is not 1-d."""
    if isinstance(g, Interval):
        return g
    if isinstance(g, Halfspaces):
        return g.as_interval() if g.dimension == 1 else None
    if isinstance(g, Box):
        if g.dimension != 1:
            return None
        r = float(g.radii[0])
        return Interval(-r, r)
    if isinstance(g, (Euclidean, Lp, LInf)):
        return Interval(-1.0, 1.0)
    return None


def one_center_1d(g : Gauge, points) -> OneCenterResult:
    """Exact 1-center on the line for ``F = [a, b]``.

    With ``alpha = min a_i`` and ``beta = max a_i`` the center is
    ``(b beta - a alpha) / (b - a)`` and the radius ``(beta - alpha) / (b - a)``;
    both extreme points lie on the boundary of the ball.
    """
    if not isinstance(g, Interval):
        raise WrongGaugeKind("one_center_1d needs an interval gauge, got %s" % g.kind)
    points = _nonempty(points)
    if points.shape[1] != 1:
        raise WrongDimension("one_center_1d works on the line, got dimension %d" % points.shape[1])
    alpha = float(points.min())
    beta = float(points.max())
    a, b = g.a, g.b
    center = (b * beta - a * alpha) / (b - a)
    return _finish(g, points, [center], "analytic1d", 0.0)


def one_center_box(g : Gauge, points) -> OneCenterResult:
    """Exact 1-center for box and max-norm gauges: the per-axis midrange."""
    if not isinstance(g, (Box, LInf)):
        raise WrongGaugeKind("one_center_box needs a box or linf gauge, got %s" % g.kind)
    points = _nonempty(points)
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    # separable per axis, so the midrange is optimal for every radius vector
    center = (lo + hi) / 2
    return _finish(g, points, center, "analytic_box", 0.0)


## euclidean

def _circle_from_two(p, q):
    c = (p + q) / 2
    return c, max(np.linalg.norm(p - c), np.linalg.norm(q - c))


def _circumcircle(a, b, c):
    ox = (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0])) / 2
    oy = (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1])) / 2
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0
    if d == 0.0:
        return None
    x = ox + ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    y = oy + ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    center = np.array([x, y])
    return center, max(np.linalg.norm(center - a), np.linalg.norm(center - b), np.linalg.norm(center - c))


def _inside(circle, p) -> bool:
    return circle is not None and np.linalg.norm(p - circle[0]) <= circle[1] * (1 + 1e-14)


def _cross(p, q, r) -> float:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _circle_two_boundary(points, p, q):
    circ = _circle_from_two(p, q)
    left = None
    right = None
    for r in points:
        if _inside(circ, r):
            continue
        cross = _cross(p, q, r)
        c = _circumcircle(p, q, r)
        if c is None:
            continue
        if cross > 0 and (left is None or _cross(p, q, c[0]) > _cross(p, q, left[0])):
            left = c
        elif cross < 0 and (right is None or _cross(p, q, c[0]) < _cross(p, q, right[0])):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left[1] <= right[1] else right


def _circle_one_boundary(points, p):
    c = (p, 0.0)
    for i, q in enumerate(points):
        if not _inside(c, q):
            if c[1] == 0.0:
                c = _circle_from_two(p, q)
            else:
                c = _circle_two_boundary(points[: i + 1], p, q)
    return c


def _smallest_circle(points : np.ndarray) -> np.ndarray:
    # fixed shuffle keeps the expected linear running time and the output deterministic
    order = np.random.default_rng(0).permutation(points.shape[0])
    shuffled = points[order]
    c = None
    for i, p in enumerate(shuffled):
        if c is None or not _inside(c, p):
            c = _circle_one_boundary(shuffled[: i + 1], p)
    return c[0]


def one_center_coreset(points, eps : Optional[float] = None, config = None) -> OneCenterResult:
    """Core-set iteration for the Euclidean 1-center in any dimension.

    Walks from the centroid toward the farthest point with step ``1/(t+1)``
    for ``ceil(1/eps^2)`` steps (at most ``CORESET_MAX_ITERATIONS``). After
    ``T`` steps the radius is within a factor ``1 + 1/sqrt(T)`` of optimal,
    which is what ``accuracy`` reports.
    """
    config = get_config(config)
    eps = config.EPS if eps is None else eps
    if eps <= 0:
        raise ValidationError("eps must be positive, got %s" % eps)
    points = _nonempty(points)
    g = Euclidean()
    if points.shape[0] == 1:
        return _finish(g, points, points[0], "euclidean_iterative", 0.0)

    iterations = math.ceil(1.0 / (eps * eps))
    if iterations > CORESET_MAX_ITERATIONS:
        logger.info("Core-set iterations capped at %d (eps = %g asks for %d)", CORESET_MAX_ITERATIONS, eps, iterations)
        iterations = CORESET_MAX_ITERATIONS
    c = points.mean(axis=0)
    for t in range(1, iterations + 1):
        far = int(np.argmax(np.linalg.norm(points - c, axis=1)))
        c = c + (points[far] - c) / (t + 1)
    ret = _finish(g, points, c, "euclidean_iterative", 0.0)
    return OneCenterResult(ret.center, ret.radius, ret.method, ret.radius / math.sqrt(iterations))


def one_center_euclidean(points, eps : Optional[float] = None, config = None) -> OneCenterResult:
    """Minimum enclosing Euclidean ball.

    Exact for ``d <= 2`` (support-point recursion), ``one_center_coreset``
    in higher dimensions.
    """
    config = get_config(config)
    eps = config.EPS if eps is None else eps
    if eps <= 0:
        raise ValidationError("eps must be positive, got %s" % eps)
    points = _nonempty(points)
    g = Euclidean()
    m, d = points.shape
    if m == 1:
        return _finish(g, points, points[0], "euclidean_exact", 0.0)
    if d == 1:
        return _finish(g, points, [(points.min() + points.max()) / 2], "euclidean_exact", 0.0)
    if d == 2:
        return _finish(g, points, _smallest_circle(points), "euclidean_exact", 0.0)
    return one_center_coreset(points, eps, config)


## general gauges

def _level_descent(g : Gauge, points : np.ndarray, start : np.ndarray, eps : float, budget : int, scale : float) -> Tuple[np.ndarray, float, bool, int]:
    """Polyak steps toward a target ``best - delta``; ``delta`` halves whenever the path runs too long."""
    x = np.array(start, dtype=np.float64)
    vals = g.evaluate(x[np.newaxis, :] - points)
    f = float(vals.max())
    best_x, best_f = x.copy(), f
    delta = max(0.5 * f, eps)
    limit = scale
    path = 0.0
    anchor = best_f
    for it in range(budget):
        if delta < eps:
            return best_x, best_f, True, it
        i = int(np.argmax(vals))    # smallest index among ties
        s = g.subgradient(x - points[i])
        n2 = float(s @ s)
        if n2 == 0:
            # x coincides with the farthest point, so every point sits at x
            return best_x, best_f, True, it
        step = (f - (best_f - delta)) / n2
        x = x - step * s
        path += step * math.sqrt(n2)
        vals = g.evaluate(x[np.newaxis, :] - points)
        f = float(vals.max())
        if f < best_f:
            best_x, best_f = x.copy(), f
        if best_f <= anchor - 0.5 * delta:
            anchor = best_f
            path = 0.0
        elif path > limit:
            delta *= 0.5
            limit *= 0.5
            path = 0.0
            anchor = best_f
            x = best_x.copy()
            vals = g.evaluate(x[np.newaxis, :] - points)
            f = best_f
    return best_x, best_f, False, budget


def _min_norm_weights(rows : np.ndarray) -> np.ndarray:
    """Convex weights ``lam`` making ``||rows^T lam||`` smallest."""
    n = rows.shape[0]
    if n == 1:
        return np.ones(1)
    # sum(lam) = 1 enters as one heavily weighted extra equation
    weight = 1e3 * max(1.0, float(np.abs(rows).max()))
    system = np.vstack([rows.T, np.full((1, n), weight)])
    target = np.zeros(system.shape[0])
    target[-1] = weight
    try:
        lam, _ = nnls(system, target, maxiter=50 * n)
    except RuntimeError:
        return np.full(n, 1.0 / n)
    total = float(lam.sum())
    if total <= 0:
        return np.full(n, 1.0 / n)
    return lam / total


def _dual_bound(g : Gauge, points : np.ndarray, x : np.ndarray, vals : np.ndarray, tol : float, set_norm : float) -> Tuple[float, np.ndarray, float]:
    """Lower bound on ``min f_1`` from the supporting rows of the ``tol``-active terms at ``x``.

    Each row ``u`` of ``F°`` attached to a point ``a`` gives
    ``f_1(y) >= <u, y - a>`` everywhere, and so does every convex combination.
    Some minimizer lies within ``reach = ||F|| f_1(x) + min_i ||x - a_i||``
    of ``x``, which bounds the linear part of the combination.

    Returns:
        ``(bound, direction, reach)`` where ``direction`` is the combined row;
        ``-direction`` is the steepest descent direction of the active terms.
    """
    f = float(vals.max())
    rows = []
    values = []
    for i in np.flatnonzero(vals >= f - tol):
        v = x - points[i]
        u = g.supporting(v, tol - (f - float(vals[i])))
        rows.append(u)
        values.append(u @ v)
    rows = np.vstack(rows)
    values = np.concatenate(values)
    lam = _min_norm_weights(rows)
    direction = rows.T @ lam
    reach = set_norm * f + float(np.min(np.linalg.norm(points - x, axis=1)))
    return float(lam @ values) - reach * float(np.linalg.norm(direction)), direction, reach


def _certified_descent(g : Gauge, points : np.ndarray, start : np.ndarray, eps : float, budget : int, set_norm : float, lower : float) -> Tuple[np.ndarray, float, float, int]:
    """Descent along the shortest combination of active supporting rows.

    ``tol`` selects which terms count as active and halves whenever the
    combination is too short to move along or no step passes the Armijo test.
    Every iterate tightens ``lower`` through ``_dual_bound``; the loop stops
    once ``f_1(x) - lower <= eps``.

    Returns:
        ``(x, f_1(x), lower, iterations)``.
    """
    x = np.array(start, dtype=np.float64)
    vals = np.asarray(g.evaluate(x[np.newaxis, :] - points))
    f = float(vals.max())
    tol = max(0.5 * f, eps)
    floor = 1e-15 * max(1.0, f)
    step = None
    for it in range(budget):
        bound, direction, reach = _dual_bound(g, points, x, vals, tol, set_norm)
        lower = max(lower, bound)
        if f - lower <= eps:
            return x, f, lower, it
        length = float(np.linalg.norm(direction))
        if reach * length <= 0.5 * tol:
            if tol <= floor:
                return x, f, lower, it
            tol *= 0.5
            continue
        t = f / (length * length) if step is None else 2.0 * step
        t = min(t, reach / length)
        moved = False
        for _ in range(60):
            y = x - t * direction
            y_vals = np.asarray(g.evaluate(y[np.newaxis, :] - points))
            if float(y_vals.max()) <= f - 0.5 * t * length * length:
                moved = True
                break
            t *= 0.5
        if moved:
            x, vals, f, step = y, y_vals, float(y_vals.max()), t
        elif tol <= floor:
            return x, f, lower, it
        else:
            tol *= 0.5
    return x, f, lower, budget


def _exact_route(g : Gauge, points : np.ndarray, eps : float, config) -> Optional[OneCenterResult]:
    interval = as_interval(g) if points.shape[1] == 1 else None
    if interval is not None:
        ret = one_center_1d(interval, points)
        return _finish(g, points, ret.center, ret.method, 0.0)
    if isinstance(g, (Box, LInf)):
        return one_center_box(g, points)
    if isinstance(g, Euclidean):
        return one_center_euclidean(points, eps, config)
    return None


def one_center_general(g : Gauge, points, eps : Optional[float] = None, config = None) -> OneCenterResult:
    """1-center for any validated gauge by subgradient descent.

    Each start (every demand point, then the centroid) runs Polyak level steps
    down to a coarse tolerance and then ``_certified_descent``, which keeps a
    lower bound on the optimal radius. Starts stop as soon as the best radius
    is within ``eps`` of that bound; restart rounds from the best center follow
    if no start got there. When the gauge admits an analytic or exact solver
    that result is returned instead if it is at least as good.

    Raises:
        NonConvergence: the gap to the lower bound is still above ``eps``; the
            exception carries the best result with that gap as accuracy.
    """
    config = get_config(config)
    eps = config.EPS if eps is None else eps
    if eps <= 0:
        raise ValidationError("eps must be positive, got %s" % eps)
    points = _nonempty(points)
    m, d = points.shape
    g.check_dimension(d)
    if m == 1:
        return _finish(g, points, points[0], "subgradient", 0.0)

    exact = _exact_route(g, points, eps, config)
    if exact is not None and exact.accuracy == 0.0:
        return exact

    budget = config.SUBGRADIENT_BUDGET_FACTOR * math.ceil(1.0 / eps)
    set_norm = g.constants(d).set_norm
    spread = covering_radius(g, points, points[0])
    scale = 4.0 * set_norm * max(spread, eps)
    settle = max(eps, math.sqrt(eps) * spread)

    lower = 0.0
    best = None
    starts = list(points) + [points.mean(axis=0)]
    for idx, start in enumerate(starts):
        x, f, _, iters = _level_descent(g, points, start, settle, budget, scale)
        x, f, lower, steps = _certified_descent(g, points, x, eps, budget, set_norm, lower)
        logger.debug("Subgradient start %d: radius %.12g, lower bound %.12g after %d + %d steps", idx, f, lower, iters, steps)
        if best is None or f < best[1]:
            best = (x, f)
        if best[1] - lower <= eps:
            break

    rounds = 0
    while best[1] - lower > eps and rounds < config.SUBGRADIENT_MAX_ROUNDS:
        x, f, lower, steps = _certified_descent(g, points, best[0], eps, budget, set_norm, lower)
        if f < best[1]:
            best = (x, f)
        logger.debug("Subgradient restart round %d: radius %.12g, gap %.3g", rounds, best[1], best[1] - lower)
        rounds += 1

    ret = _finish(g, points, best[0], "subgradient", eps)
    if exact is not None and exact.radius <= ret.radius:
        return exact
    gap = max(0.0, ret.radius - lower)
    if gap > eps:
        logger.warning("Subgradient 1-center did not settle: gap %.3g above eps %.3g", gap, eps)
        raise NonConvergence("subgradient 1-center gap %.3g still above eps %.3g after %d restart rounds" % (gap, eps, rounds),
            OneCenterResult(ret.center, ret.radius, ret.method, gap))
    return ret


def one_center_grid_oracle(g : Gauge, points, resolution : int = 200, refinements : int = 2) -> OneCenterResult:
    """Brute-force 1-center on a uniform grid over the ball ``B_F[a_1, rho]`` (``d <= 2``).

    Every minimizer lies in that ball. Each refinement re-grids the bounding
    box of the nodes that can still be within half a cell diagonal of a
    minimizer, so the reported accuracy ``||F°||`` times the diagonal of the
    last grid cell bounds the radius error.
    """
    points = _nonempty(points)
    m, d = points.shape
    if d > 2:
        raise DimensionTooLarge("the grid oracle handles d <= 2, got %d" % d)
    if resolution < 1:
        raise ValidationError("resolution must be positive, got %d" % resolution)
    g.check_dimension(d)
    constants = g.constants(d)
    lipschitz = constants.polar_norm
    rho = float(np.max(g.evaluate(points[0] - points)))
    if m == 1 or rho == 0:
        return _finish(g, points, points[0], "grid_oracle", 0.0)

    lo = points[0] - constants.set_norm * rho
    hi = points[0] + constants.set_norm * rho
    best = None
    for level in range(refinements + 1):
        axes = [np.linspace(lo[c], hi[c], resolution + 1) for c in range(d)]
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d)
        vals = np.asarray(g.evaluate(grid[:, np.newaxis, :] - points[np.newaxis, :, :])).max(axis=1)
        j = int(np.argmin(vals))
        if best is None or vals[j] <= best[1]:
            best = (grid[j].copy(), float(vals[j]))
        cell = (hi - lo) / resolution
        diagonal = float(np.linalg.norm(cell))
        logger.debug("Grid level %d: radius %.9g, cell diagonal %.3g", level, best[1], diagonal)
        # the node nearest a minimizer is within lipschitz * diagonal / 2 of the optimum
        near = grid[vals <= vals[j] + lipschitz * diagonal / 2]
        lo = np.maximum(lo, near.min(axis=0) - cell)
        hi = np.minimum(hi, near.max(axis=0) + cell)
    return _finish(g, points, best[0], "grid_oracle", lipschitz * diagonal)


def solve_one_center(g : Gauge, points, eps : Optional[float] = None, config = None) -> OneCenterResult:
    """The 1-center by the best solver the gauge admits."""
    config = get_config(config)
    eps = config.EPS if eps is None else eps
    points = _nonempty(points)
    exact = _exact_route(g, points, eps, config)
    if exact is not None:
        return exact
    return one_center_general(g, points, eps, config)
