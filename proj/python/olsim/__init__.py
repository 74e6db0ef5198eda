"""Schedule-based online routing algorithms under competitive analysis."""

from olsim._core import (  # noqa: F401
    AlgorithmConfig,
    BoundSet,
    Instance,
    LowerBoundReport,
    MetricSpace,
    OlsimError,
    OptResult,
    Point,
    Request,
    RunReport,
    ScheduleRecord,
    ScheduleRoute,
    Trace,
    certify_plain,
    classify_and_certify,
    generate_uniform,
    instance_from_json,
    load_matrix_csv,
    lowerbound_game,
    opt_bruteforce,
    opt_dp,
    random_metric_space,
    read_instance,
    replay_order,
    route_length,
    simulate,
    smartstart_best_theta,
    smartstart_bound,
    solve_christofides,
    solve_exact,
    solve_nearest_neighbor,
    ssop_bounds,
    validate_metric,
    write_instance,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
