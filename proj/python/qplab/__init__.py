"""Almost periods, inclusion lengths and hull dimensions of quasiperiodic signals."""

from ._core import (
    Error,
    Signal,
    badness_score,
    best_simultaneous_denominator,
    cf_expand,
    equivalence_constants,
    hull_dimension,
    hull_metric,
    kronecker_residuals,
    kronecker_solve,
    length_curve,
    lipschitz_constant,
    orbit_angles,
    preset_names,
    sublevel_scan,
    sup_oracle,
    translation_distance,
)

__all__ = [
    "Error",
    "Signal",
    "badness_score",
    "best_simultaneous_denominator",
    "cf_expand",
    "equivalence_constants",
    "hull_dimension",
    "hull_metric",
    "kronecker_residuals",
    "kronecker_solve",
    "length_curve",
    "lipschitz_constant",
    "orbit_angles",
    "preset_names",
    "sublevel_scan",
    "sup_oracle",
    "translation_distance",
]
