"""Exact rational polyhedral kernel."""

from .polyhedron import (Generators, LinearConstraint, NNCPolyhedron, NNCSet, eq, ge, gt, le,
                         lift_product, lt, open_segments)
from .fm import project
from .cones import (LinearFunctional, PolyhedralCone, box_vertices, cone_hull_closure,
                    cone_of_ball_translate, open_cone, polar_positive, slab_cone_closure)


def dd_convert(p):
    """Return ``p`` with both descriptions populated (generators computed)."""
    p.generators
    return p


__all__ = [
    "Generators", "LinearConstraint", "NNCPolyhedron", "NNCSet", "eq", "ge", "gt", "le", "lt",
    "lift_product", "open_segments", "project", "LinearFunctional", "PolyhedralCone",
    "box_vertices", "cone_hull_closure", "cone_of_ball_translate", "open_cone",
    "polar_positive", "slab_cone_closure", "dd_convert",
]
