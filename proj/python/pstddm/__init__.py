from ._pstddm import (
    ConfigError,
    ExperimentConfig,
    SolverError,
    bessel_j0,
    bessel_j1,
    bessel_y0,
    bessel_y1,
    branch_sqrt,
    csv_header,
    exact_solution,
    hankel0_first,
    hankel1_first,
    load_config,
    parse_config,
    run_experiment,
    source_term,
)

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "SolverError",
    "bessel_j0",
    "bessel_j1",
    "bessel_y0",
    "bessel_y1",
    "branch_sqrt",
    "csv_header",
    "exact_solution",
    "hankel0_first",
    "hankel1_first",
    "load_config",
    "parse_config",
    "run_experiment",
    "source_term",
]
