"""Exact parabolic Higgs-de Rham computations on P^1 over finite fields.

Field elements are lists of coordinates in the power basis of F_{p^k}.
Bundles and connections travel as JSON text.
"""

from ._parab import (
    ArithmeticError,
    NonPeriodicError,
    ValidationError,
    boundary_delta,
    cartier,
    deligne_illusie,
    delta_closed_form,
    det_poly_lambda1,
    field_modulus,
    flow_is_period_one,
    hn_type,
    inverse_cartier,
    is_isomorphic,
    normalize_conn,
    periodicity_roots,
    random_higgs,
    run_suite,
    suite_names,
)

__all__ = [
    "ArithmeticError",
    "NonPeriodicError",
    "ValidationError",
    "boundary_delta",
    "cartier",
    "deligne_illusie",
    "delta_closed_form",
    "det_poly_lambda1",
    "field_modulus",
    "flow_is_period_one",
    "hn_type",
    "inverse_cartier",
    "is_isomorphic",
    "normalize_conn",
    "periodicity_roots",
    "random_higgs",
    "run_suite",
    "suite_names",
]
