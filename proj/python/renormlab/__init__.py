"""Period-doubling renormalization toolkit (C++ core)."""

from ._core import (
    Error,
    Map,
    apriori,
    code_point,
    d_sequence,
    distance,
    extension,
    feigenbaum,
    horseshoe,
    interval_tower,
    max_amplitude,
    quadratic,
    reference_map,
    regularity,
    renormalize,
    renormalize_n,
    resolve_map,
    run_cli,
    scaling_factors,
    schema_version,
    solve_fixed_point,
)

__all__ = [
    "Error",
    "Map",
    "apriori",
    "code_point",
    "d_sequence",
    "distance",
    "extension",
    "feigenbaum",
    "horseshoe",
    "interval_tower",
    "max_amplitude",
    "quadratic",
    "reference_map",
    "regularity",
    "renormalize",
    "renormalize_n",
    "resolve_map",
    "run_cli",
    "scaling_factors",
    "schema_version",
    "solve_fixed_point",
]
