from typing import List, Optional
import numpy as np


class SeededSampler:
    def __init__(self,
            seed : Optional[int],
            dimension : int,
        ):
        if dimension <= 0:
            raise ValueError("dimension <= 0")
        self.seed = seed
        self.dimension = dimension
        self.rng = np.random.default_rng(seed)

    def spawn(self, index : int) -> 'SeededSampler':
        """Child sampler whose stream depends only on (seed, index)."""
        base = 0 if self.seed is None else self.seed
        ret = SeededSampler(None, self.dimension)
        ret.seed = base
        ret.rng = np.random.default_rng([base, index])
        return ret

    def unit_vector(self) -> np.ndarray:
        while True:
            v = self.rng.standard_normal(self.dimension)
            norm = np.linalg.norm(v)
            if norm > 0:
                return v / norm

    def in_ball(self, radius : float, count : int = 1) -> np.ndarray:
        """Uniform draws from the closed Euclidean ball of the given radius, shape (count, d)."""
        if radius < 0:
            raise ValueError("radius < 0")
        v = self.rng.standard_normal((count, self.dimension))
        norms = np.linalg.norm(v, axis=1, keepdims=True)
        norms[norms == 0] = 1
        scale = radius * self.rng.random((count, 1)) ** (1.0 / self.dimension)
        return v / norms * scale

    def choose(self, m : int, k : int) -> List[int]:
        """k distinct indices out of range(m), in draw order."""
        if k > m:
            raise ValueError("cannot draw %d distinct indices out of %d" % (k, m))
        return [int(it) for it in self.rng.choice(m, size=k, replace=False)]

    def uniform_box(self, low : float, high : float, count : int) -> np.ndarray:
        if not low < high:
            raise ValueError("low >= high")
        return self.rng.uniform(low, high, size=(count, self.dimension))
