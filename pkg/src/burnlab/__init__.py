"""Graph burning laboratory.

Spread-and-ignite process engine, exact and certified burning numbers,
constructive schedules for paths, grids and geometric graphs, Monte
Carlo estimation of randomized-ignition variants, and closed-form
predictors, all behind one deterministic seeding scheme.
"""

from .drunk import (
    STALLED,
    DrunkVariant,
    TrialStats,
    cost_of_drunkenness,
    drunk_estimate,
    drunk_trial,
    path_drunk_trial_fast,
)
from .engine import (
    INCOMPLETE,
    PERMISSIVE,
    STRICT,
    BurnSchedule,
    BurnTrace,
    IgnitionError,
    covered_by_balls,
    read_schedule,
    repair_schedule,
    simulate,
    write_schedule,
)
from .generators import (
    GnpSample,
    PointSet,
    critical_radius,
    gen_gnp,
    gen_rgg,
    gen_structured,
    read_points,
    write_points,
)
from .graph import (
    UNREACHABLE,
    DistanceMap,
    Graph,
    ball,
    ball_size,
    bfs_distances,
    build_graph,
    components,
    diameter,
    eccentricity,
    induced_subgraph,
    largest_component,
    mark_ball,
    read_edge_file,
    sphere,
    write_edge_file,
)
from .predictors import (
    K3_DEFAULT,
    OUT_OF_REGIME,
    GnpPrediction,
    GridPrediction,
    NeighborhoodProfile,
    neighborhood_profile,
    predict_gnp,
    predict_grid,
    predict_path_drunk,
)
from .rng import Splitmix64, mix, stream, stream_block, u01_block
from .solver import (
    BoundCertificate,
    SolveResult,
    UnsolvedError,
    b2_certificate,
    burning_number_bruteforce,
    burning_number_exact,
    greedy_schedule,
    is_b_two,
    lower_bound_ballsum,
    upper_bound_center,
)
from .strategies import (
    CellPlan,
    GridPlan,
    RggBound,
    grid_lower_bound,
    grid_narrow_schedule,
    grid_strip_schedule,
    path_schedule,
    rgg_cell_schedule,
    rgg_lower_bound,
)
from .sweep import ResultRow, SweepConfig, parse_config, run_sweep

__version__ = "0.1.0"

__all__ = [
    "b2_certificate",
    "ball",
    "ball_size",
    "bfs_distances",
    "BoundCertificate",
    "build_graph",
    "burning_number_bruteforce",
    "burning_number_exact",
    "BurnSchedule",
    "BurnTrace",
    "CellPlan",
    "components",
    "cost_of_drunkenness",
    "covered_by_balls",
    "critical_radius",
    "diameter",
    "DistanceMap",
    "drunk_estimate",
    "drunk_trial",
    "DrunkVariant",
    "eccentricity",
    "gen_gnp",
    "gen_rgg",
    "gen_structured",
    "GnpPrediction",
    "GnpSample",
    "Graph",
    "greedy_schedule",
    "grid_lower_bound",
    "grid_narrow_schedule",
    "grid_strip_schedule",
    "GridPlan",
    "GridPrediction",
    "IgnitionError",
    "INCOMPLETE",
    "induced_subgraph",
    "is_b_two",
    "K3_DEFAULT",
    "largest_component",
    "lower_bound_ballsum",
    "mark_ball",
    "mix",
    "neighborhood_profile",
    "NeighborhoodProfile",
    "OUT_OF_REGIME",
    "parse_config",
    "path_drunk_trial_fast",
    "path_schedule",
    "PERMISSIVE",
    "PointSet",
    "predict_gnp",
    "predict_grid",
    "predict_path_drunk",
    "read_edge_file",
    "read_points",
    "read_schedule",
    "repair_schedule",
    "ResultRow",
    "rgg_cell_schedule",
    "rgg_lower_bound",
    "RggBound",
    "run_sweep",
    "simulate",
    "SolveResult",
    "sphere",
    "Splitmix64",
    "STALLED",
    "stream",
    "stream_block",
    "STRICT",
    "SweepConfig",
    "TrialStats",
    "u01_block",
    "UNREACHABLE",
    "UnsolvedError",
    "upper_bound_center",
    "write_edge_file",
    "write_points",
    "write_schedule",
]
