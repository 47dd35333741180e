import numpy as np
from .cache import HandleCache, BlockCache
from .sampler import SeededSampler
from .partition import restricted_growth_strings, blocks_of, count_partitions


def as_points(points, dimension = None) -> np.ndarray:
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1:
        if dimension is not None and dimension != 1:
            arr = arr.reshape(1, -1)
        else:
            arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError("points must be a 2-d array, got shape %s" % (arr.shape,))
    return arr


def as_vector(v) -> np.ndarray:
    return np.atleast_1d(np.asarray(v, dtype=np.float64))


def parallel_map(fn, items, workers : int = 1):
    """``list(map(fn, items))``, fanned out over threads when ``workers > 1``; order is preserved."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
