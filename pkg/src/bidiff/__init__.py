"""Gauged bi-differential calculus for KdV and its tower of conserved densities."""
from .conserve import (
    ReferenceCatalog,
    VerificationError,
    charge_integrand,
    conservation_check,
    load_catalog,
    match_reference,
)
from .densities import flux, gardner_residual, rho
from .jetio import ParseError, format_poly, from_json, parse, to_json
from .jetpoly import (
    DiffPoly,
    ExplicitCoordinateError,
    JetVar,
    Monomial,
    euler_operator,
    normal_form_mod_dx,
    ring_ops,
    substitute_kdv,
    total_derivative,
)
from .opcalc import (
    DegreeError,
    GradedForm,
    Operator,
    d_map,
    delta_map,
    form_mul,
    gauge_curvature,
    kdv_residual_from_potential,
    op_mul,
)
from .tower import GradedMapPair, TowerError, TowerState, kdv_maps, local_delta_solver, tower_iterate

__version__ = "0.1.0"
