import logging
logger = logging.getLogger(__name__)


class HandleCache:
    def __init__(self, cache_size = 8) -> None:
        self.cache_size = cache_size
        self.t = 0
        self.lru_counter = {}
        self.cache = {}
        self.hits = 0
        self.misses = 0

    def __call__(self, *args):
        self.t += 1
        if args in self.cache:
            logger.debug("Get %s HIT", args)
            self.hits += 1
            self.lru_counter[args] = self.t
            return self.cache[args]
        logger.debug("Get %s Missing", args)
        self.misses += 1
        v = self.create(*args)
        if len(self.cache) >= self.cache_size:
            mn_kw = min(self.lru_counter, key=self.lru_counter.get)
            del self.lru_counter[mn_kw]
            logger.debug("Release %s", mn_kw)
            self.release( self.cache[mn_kw] )
            del self.cache[mn_kw]
        self.cache[args] = v
        self.lru_counter[args] = self.t
        return v

    def __len__(self):
        return len(self.cache)

    def create(self, *args):
        raise NotImplementedError()

    def release(self, x):
        pass


class BlockCache(HandleCache):
    """LRU cache of 1-center results keyed by a block of demand point indices."""

    def __init__(self, solve, cache_size = 4096) -> None:
        super().__init__(cache_size)
        self._solve = solve

    def create(self, block):
        return self._solve(block)
