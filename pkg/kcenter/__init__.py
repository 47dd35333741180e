from .version import __version__
from .config import SolverConfiguration, DEFAULT_CONFIG
from .errors import KCenterError, ValidationError, InstanceParseError, ResourceGuardError, NumericalError
from .gauge import (
    Gauge, GaugeConstants, Euclidean, Lp, LInf, Box, Interval, Halfspaces,
    gauge_from_json, validate_gauge, gauge_eval, constants_of,
    asymmetry_bound_check, generalized_ball_contains,
)
from .instance import (
    Instance, CenterConfiguration, DCComponents, ClusteringView,
    distance_matrix, objective, dc_components, active_sets,
    attraction_sets, natural_clustering, clamp_radius,
)
from . import solvers
from .solvers import (
    OneCenterResult, SolveReport, TwoCenterBound,
    solve_one_center, exact_by_partition, multi_start, alternating_heuristic,
    clamp_centers, two_center_split_bound, two_center_1d,
)
from .analysis import certify_local, compactness_diagnostic, unbounded_ray_probe, perturbation_probe
