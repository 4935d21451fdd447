"""Bound states of the free radial equation on knot contours."""

from ._core import (
    ContourSpec,
    KnotQuantum,
    ShootResult,
    SurfacePoint,
    allowed_angular_momenta,
    continuation_oracle,
    contour_points,
    coupling_for_knot,
    dimension_dichotomy,
    effective_order,
    growing_coefficient,
    hankel,
    hankel_on_surface,
    is_bound_state,
    map_from_strip,
    map_to_strip,
    monodromy_coeffs,
    scan_sturmian,
    shoot,
)

__all__ = [
    "ContourSpec",
    "KnotQuantum",
    "ShootResult",
    "SurfacePoint",
    "allowed_angular_momenta",
    "continuation_oracle",
    "contour_points",
    "coupling_for_knot",
    "dimension_dichotomy",
    "effective_order",
    "growing_coefficient",
    "hankel",
    "hankel_on_surface",
    "is_bound_state",
    "map_from_strip",
    "map_to_strip",
    "monodromy_coeffs",
    "scan_sturmian",
    "shoot",
]
