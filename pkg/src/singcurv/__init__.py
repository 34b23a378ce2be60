"""Curvature, torsion and surface curvatures at singular points of algebraic varieties."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    InputError,
    NonLinearTangentCone,
    OrderExhausted,
    PencilUnresolved,
    PointNotOnVariety,
    SingcurvError,
    SolverError,
)
from .parse import parse_point, parse_poly  # noqa: E402
from .plane import plane_branch_curvatures, regular_curvature_implicit  # noqa: E402
from .ratpoly import Poly  # noqa: E402
from .singular import multiplicity, plane_tangent_directions, surface_tangent_planes  # noqa: E402
from .space import regular_space_frenet_implicit, space_branch_frenet, space_tangents  # noqa: E402
from .surface import regular_surface_curvatures_implicit, surface_branch_curvatures  # noqa: E402

__all__ = [
    "Poly",
    "parse_poly",
    "parse_point",
    "multiplicity",
    "plane_tangent_directions",
    "surface_tangent_planes",
    "plane_branch_curvatures",
    "regular_curvature_implicit",
    "surface_branch_curvatures",
    "regular_surface_curvatures_implicit",
    "space_tangents",
    "space_branch_frenet",
    "regular_space_frenet_implicit",
    "SingcurvError",
    "InputError",
    "SolverError",
    "PointNotOnVariety",
    "NonLinearTangentCone",
    "OrderExhausted",
    "PencilUnresolved",
]
