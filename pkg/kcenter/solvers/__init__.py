from .one_center import (
    OneCenterResult,
    ONE_CENTER_METHODS,
    covering_radius,
    as_interval,
    one_center_1d,
    one_center_box,
    one_center_coreset,
    one_center_euclidean,
    one_center_general,
    one_center_grid_oracle,
    solve_one_center,
)
from .k_center import (
    SolveReport,
    SOLVE_METHODS,
    clamp_centers,
    exact_by_partition,
    alternating_heuristic,
    farthest_point_init,
    multi_start,
)
from .bounds import TwoCenterBound, hyperplane_witness, two_center_split_bound, two_center_1d
