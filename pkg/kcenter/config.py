import os
import logging

logger = logging.getLogger(__name__)


class Configuration:
    def __init__(self, **kwargs) -> None:
        self._kws = {}
        for name, value in kwargs.items():
            setattr(self, name, value)

    def __getattribute__(self, name: str):
        if name.startswith("_"):
            return super().__getattribute__(name)
        if name in self._kws:
            return self._kws[name]
        return super().__getattribute__(name)

    def __setattr__(self, name: str, value) -> None:
        if name.startswith("_"):
            super().__setattr__(name, value)
            return
        if not hasattr(type(self), name):
            raise AttributeError("Unknown configuration option %s" % name)
        self._kws[name] = value

    def copy(self, **kwargs) -> 'Configuration':
        ret = type(self)()
        for name, value in self._kws.items():
            setattr(ret, name, value)
        for name, value in kwargs.items():
            setattr(ret, name, value)
        return ret

    def options(self):
        ret = {}
        for name in dir(type(self)):
            if name.isupper():
                ret[name] = getattr(self, name)
        return ret


class SolverConfiguration(Configuration):
    ## tolerances
    TIE_TOLERANCE = 1e-9
    BOUNDARY_TOLERANCE = 1e-12
    ORACLE_TOLERANCE = 1e-9
    NEAR_TIE = 1e-12
    IMPROVEMENT_TOLERANCE = 1e-12
    EPS = 1e-6

    ## exact oracle guard
    MAX_POINTS = 14
    MAX_K = 5
    CACHE_SIZE = 4096

    ## heuristic
    HEURISTIC_TOLERANCE = 1e-9
    MAX_ROUNDS = 200
    SUBGRADIENT_BUDGET_FACTOR = 50
    SUBGRADIENT_MAX_ROUNDS = 20

    ## two-center bound
    WITNESS_DRAWS = 1000
    WITNESS_RELATIVE_TOLERANCE = 1e-12

    ## diagnostics
    DECISION_BAND = 10

    ## runtime
    WORKERS = 1
    SHOW_PROGRESS = False
    RECORD_TIMING = False

    @classmethod
    def from_env(cls, environ = None) -> 'SolverConfiguration':
        if environ is None:
            environ = os.environ
        ret = cls()
        for name, default in ret.options().items():
            key = "KCENTER_" + name
            if key not in environ:
                continue
            raw = environ[key]
            if isinstance(default, bool):
                value = raw.strip().lower() in ("1", "true", "yes", "on")
            else:
                value = type(default)(raw)
            logger.info("Config override %s = %s", name, value)
            setattr(ret, name, value)
        return ret


DEFAULT_CONFIG = SolverConfiguration()


def get_config(config = None) -> SolverConfiguration:
    if config is None:
        return DEFAULT_CONFIG
    return config
