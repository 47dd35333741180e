from dataclasses import dataclass, field
from typing import List, Optional, Tuple
import itertools
import logging
import numpy as np
from tqdm import tqdm

from ..instance import Instance, CenterConfiguration, objective, natural_clustering, clamp_radius
from ..errors import TooLarge, ValidationError, DimensionMismatch
from ..config import get_config
from ..utils import BlockCache, SeededSampler, restricted_growth_strings, blocks_of, count_partitions, parallel_map
from .one_center import solve_one_center, covering_radius

logger = logging.getLogger(__name__)

SOLVE_METHODS = (
    "exact_partition",
    "alternating",
    "multi_start",
    "split_1d",         # closed-form two-center upper bound on the line
)


@dataclass(frozen=True)
class SolveReport:
    """Centers with their objective value.

    ``method`` is one of ``SOLVE_METHODS``; ``value`` is re-evaluated at
    ``centers`` and lies within ``accuracy`` of what the method guarantees.
    """
    value : float
    centers : CenterConfiguration
    method : str
    accuracy : float
    iterations : int = 0
    partition : Optional[Tuple[Tuple[int, ...], ...]] = None
    seed : Optional[int] = None
    trace : Tuple[float, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        ret = {
            "value": self.value,
            "centers": self.centers.tolist(),
            "method": self.method,
            "accuracy": self.accuracy,
            "iterations": self.iterations,
            "seed": self.seed,
            "partition": None,
        }
        if self.partition is not None:
            # 1-based point indices
            ret["partition"] = [[i + 1 for i in block] for block in self.partition]
        return ret


def clamp_centers(inst : Instance, x : CenterConfiguration, i0 : int = 0) -> CenterConfiguration:
    """Move every center farther than ``(1 + ||F|| ||F°||) rho`` from ``a_i0`` onto ``a_i0``.

    The objective never increases: a far center is never closer to a demand
    point than ``a_i0`` is.
    """
    threshold = clamp_radius(inst, i0)
    if x.dimension != inst.dimension:
        raise DimensionMismatch("centers live in R^%d but the instance is in R^%d" % (x.dimension, inst.dimension))
    anchor = inst.points[i0]
    dist = np.asarray(inst.gauge.evaluate(x.centers - anchor[np.newaxis, :])).reshape(-1)
    far = dist > threshold
    if not far.any():
        return x
    logger.debug("Clamping centers %s onto point %d (threshold %.6g)", (np.flatnonzero(far) + 1).tolist(), i0 + 1, threshold)
    arr = np.array(x.centers)
    arr[far] = anchor
    return CenterConfiguration(arr)


def _pad(centers : List[np.ndarray], k : int) -> CenterConfiguration:
    # copies of the first center never change the objective
    centers = list(centers) + [centers[0]] * (k - len(centers))
    return CenterConfiguration(np.stack(centers))


def _check_k(inst : Instance, k : int):
    if k < 1:
        raise ValidationError("k must be at least 1, got %d" % k)


def exact_by_partition(inst : Instance,
        k : int,
        eps : Optional[float] = None,
        force : bool = False,
        config = None,
    ) -> SolveReport:
    """Exact optimal value by enumerating partitions of the demand points.

    The optimal value equals the minimum, over partitions of ``I`` into at most
    ``k`` nonempty blocks, of the largest block 1-center radius. Partitions are
    visited in restricted growth string order and the first partition attaining
    the minimum is reported.

    Args:
        inst: The instance.
        k: Number of centers.
        eps: Accuracy handed to the 1-center subsolver.
        force: Skip the ``m <= MAX_POINTS``, ``k <= MAX_K`` enumeration guard.
        config: A ``SolverConfiguration`` or ``None``.

    Returns:
        A report whose accuracy is the sum of the block subsolver accuracies.

    Raises:
        TooLarge: The guard is exceeded and ``force`` is not set.
    """
    config = get_config(config)
    eps = config.EPS if eps is None else eps
    _check_k(inst, k)
    m = inst.m
    if m > config.MAX_POINTS or k > config.MAX_K:
        if not force:
            raise TooLarge("exact enumeration is limited to m <= %d and k <= %d, got m = %d, k = %d; use the heuristic or force" % (config.MAX_POINTS, config.MAX_K, m, k))
        logger.warning("Enumeration guard overridden: m = %d, k = %d (%d partitions)", m, k, count_partitions(m, min(k, m)))

    if k >= m:
        blocks = tuple((i,) for i in range(m))
        centers = _pad([inst.points[i] for i in range(m)], k)
        return SolveReport(objective(inst, centers), centers, "exact_partition", 0.0, 0, blocks)

    gauge = inst.gauge
    points = inst.points
    total = count_partitions(m, k)
    logger.info("Exact oracle: m = %d, k = %d, %d partitions", m, k, total)

    workers = max(1, int(config.WORKERS))

    def solve_chunk(lane):
        # lane w visits partitions w, w + workers, w + 2 workers, ...
        strings = itertools.islice(restricted_growth_strings(m, k), lane, None, workers)
        if config.SHOW_PROGRESS and workers == 1:
            strings = tqdm(strings, total=total, desc="Partitions", leave=False)
        cache = BlockCache(lambda block: solve_one_center(gauge, points[list(block)], eps, config), config.CACHE_SIZE)
        best = None
        for step, rgs in enumerate(strings):
            index = lane + step * workers
            blocks = blocks_of(rgs)
            worst = 0.0
            pruned = False
            for block in sorted(blocks, key=len, reverse=True):
                worst = max(worst, cache(block).radius)
                if best is not None and worst >= best[0]:
                    pruned = True
                    break
            if not pruned:
                best = (worst, index, blocks, [cache(block) for block in blocks])
        logger.debug("Lane %d: cache hits %d, misses %d", lane, cache.hits, cache.misses)
        return best

    results = [it for it in parallel_map(solve_chunk, range(workers), workers) if it is not None]
    value, index, blocks, solved = min(results, key=lambda it: (it[0], it[1]))

    centers = _pad([it.center for it in solved], k)
    accuracy = float(sum(it.accuracy for it in solved))
    logger.info("Exact oracle: value %.12g at partition #%d %s", value, index, [[i + 1 for i in b] for b in blocks])
    return SolveReport(value, centers, "exact_partition", accuracy, total, tuple(blocks))


def alternating_heuristic(inst : Instance,
        k : int,
        init : CenterConfiguration,
        tol : Optional[float] = None,
        max_rounds : Optional[int] = None,
        eps : Optional[float] = None,
        config = None,
    ) -> SolveReport:
    """Lloyd-style descent: natural clustering, then recenter every nonempty block on its 1-center.

    Centers with an empty block stay where they are. The objective trace is
    non-increasing: a center is replaced only when the block 1-center does not
    enlarge the block radius.
    """
    config = get_config(config)
    tol = config.HEURISTIC_TOLERANCE if tol is None else tol
    max_rounds = config.MAX_ROUNDS if max_rounds is None else max_rounds
    if init.k != k:
        raise ValidationError("initial configuration has %d centers, expected %d" % (init.k, k))
    if init.dimension != inst.dimension:
        raise DimensionMismatch("initial centers live in R^%d but the instance is in R^%d" % (init.dimension, inst.dimension))

    x = init
    value = objective(inst, x)
    trace = [value]
    rounds = 0
    for rounds in range(1, max_rounds + 1):
        view = natural_clustering(inst, x, 0.0)
        arr = np.array(x.centers)
        for ell, block in enumerate(view.natural_blocks):
            if len(block) == 0:
                continue
            sub = inst.points[list(block)]
            ret = solve_one_center(inst.gauge, sub, eps, config)
            if ret.radius <= covering_radius(inst.gauge, sub, arr[ell]):
                arr[ell] = ret.center
        x_new = CenterConfiguration(arr)
        new_value = objective(inst, x_new)
        trace.append(new_value)
        improvement = value - new_value
        x, value = x_new, new_value
        logger.debug("Alternating round %d: value %.12g (improvement %.3g)", rounds, value, improvement)
        if improvement < tol:
            break
    return SolveReport(value, x, "alternating", 0.0, rounds, natural_clustering(inst, x, 0.0).natural_blocks, None, tuple(trace))


def farthest_point_init(inst : Instance, k : int) -> CenterConfiguration:
    """Greedy traversal: start at ``a_1`` and repeatedly add the point farthest from the chosen ones."""
    chosen = [0]
    nearest = np.asarray(inst.gauge.evaluate(inst.points[0][np.newaxis, :] - inst.points)).reshape(-1)
    while len(chosen) < min(k, inst.m):
        nxt = int(np.argmax(nearest))
        chosen.append(nxt)
        dist = np.asarray(inst.gauge.evaluate(inst.points[nxt][np.newaxis, :] - inst.points)).reshape(-1)
        nearest = np.minimum(nearest, dist)
    return _pad([inst.points[i] for i in chosen], k)


def multi_start(inst : Instance,
        k : int,
        restarts : int,
        seed : int = 0,
        tol : Optional[float] = None,
        eps : Optional[float] = None,
        config = None,
    ) -> SolveReport:
    """Best of the alternating heuristic over seeded initializations.

    Initializations are one farthest-point traversal followed by ``restarts``
    draws of ``k`` distinct demand points, each passed through ``clamp_centers``.
    All draws are made before any run, so the result depends on ``seed`` only.
    """
    config = get_config(config)
    _check_k(inst, k)
    if restarts < 1:
        raise ValidationError("restarts must be at least 1, got %d" % restarts)

    sampler = SeededSampler(seed, inst.dimension)
    inits = [farthest_point_init(inst, k)]
    for _ in range(restarts):
        idx = sampler.choose(inst.m, min(k, inst.m))
        inits.append(_pad([inst.points[i] for i in idx], k))
    inits = [clamp_centers(inst, it, 0) for it in inits]

    def run(init):
        return alternating_heuristic(inst, k, init, tol, None, eps, config)

    workers = max(1, int(config.WORKERS))
    if config.SHOW_PROGRESS and workers == 1:
        reports = [run(it) for it in tqdm(inits, desc="Restarts", leave=False)]
    else:
        reports = parallel_map(run, inits, workers)
    index, best = min(enumerate(reports), key=lambda it: (it[1].value, it[0]))
    rounds = sum(it.iterations for it in reports)
    logger.info("Multi-start: best value %.12g from start %d of %d (%d rounds total)", best.value, index, len(reports), rounds)
    return SolveReport(best.value, best.centers, "multi_start", best.accuracy, rounds, best.partition, seed, best.trace)
