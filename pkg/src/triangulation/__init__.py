# optlim triangulation package
from .octahedron import Octahedron, THURSTON, TRANSPORT
from .triangulation import (
    Tetrahedron, EdgeClass, Triangulation, build_thurston, build_yokota,
    verify_edge_relations, verify_cusp, check_essential, compute_stretches,
)
from .moves import (
    move_45, inverse_45, move_32, inverse_32, collapsed_move, inverse_collapsed_move,
)

__all__ = [
    "Octahedron", "THURSTON", "TRANSPORT", "Tetrahedron", "EdgeClass", "Triangulation",
    "build_thurston", "build_yokota", "verify_edge_relations", "verify_cusp", "check_essential",
    "compute_stretches", "move_45", "inverse_45", "move_32", "inverse_32", "collapsed_move",
    "inverse_collapsed_move",
]
