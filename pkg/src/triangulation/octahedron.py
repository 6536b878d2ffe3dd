"""
Octahedron Module
-----------------
This module provides the local model of the ideal octahedron placed at a kept
crossing: letters A..D on the four strand ends (A on the incoming over-strand,
counterclockwise), E under and F over the crossing, the point identifications
caused by collapsing, and the tetrahedra of both subdivisions that survive them.
"""
import logging

from networkx.utils import UnionFind

from ..diagram.pd import UNDER_OUT
from ..errors import CollapseError
from ..potential.monomial import Monomial

# Configure logging
logger = logging.getLogger(__name__)

LETTERS = "ABCD"

# Thurston tetrahedra: vertex order (u on v0v1/v2v3, u' on v0v3/v1v2, u'' on v0v2/v1v3),
# then the corners in the numerator and the denominator of the shape
THURSTON = {
    'BCDF': ("CFDB", ("BC",), ("CD",)),
    'ACDE': ("DECA", ("DA",), ("CD",)),
    'ABDF': ("AFBD", ("DA",), ("AB",)),
    'ABCE': ("BEAC", ("BC",), ("AB",)),
    'ABCD': ("ACDB", ("AB", "CD"), ("BC", "DA")),
}
THURSTON_ORDER = ("BCDF", "ACDE", "ABDF", "ABCE", "ABCD")

# Horizontal edges whose Yokota ratios feed each Thurston shape as t' and t''
TRANSPORT = {
    'BCDF': ("CD", "BC"),
    'ACDE': ("CD", "DA"),
    'ABDF': ("AB", "DA"),
    'ABCE': ("AB", "BC"),
}

CORNERS = ("AB", "BC", "CD", "DA")

# Parameter index on the edge between v_a and v_b: 0 for u, 1 for u', 2 for u''
EDGE_PARAMETER = {
    (0, 1): 0, (2, 3): 0,
    (0, 3): 1, (1, 2): 1,
    (0, 2): 2, (1, 3): 2,
}


def tetrahedron_edges(order):
    """The six edges of a tetrahedron as (letter pair, parameter index)."""
    edges = []
    for (a, b), kind in sorted(EDGE_PARAMETER.items()):
        edges.append((order[a] + order[b], kind))
    return edges


def yokota_order(corner):
    return corner[0] + corner[1] + "EF"


class Octahedron:
    """The octahedron at one vertex of the reduced graph."""

    def __init__(self, vertex):
        """
        Initialize the local model.

        Args:
            vertex (Vertex): Kept crossing of the reduced graph
        """
        self.vertex = vertex
        self.crossing = vertex.crossing
        zeros = vertex.zero_corners
        if len(zeros) > 1 and vertex.role == 'full':
            raise CollapseError(f"vertex {vertex.index} collapses {len(zeros)} horizontal edges")
        if vertex.role != 'full' and any(p in vertex.open_corners for p in zeros):
            raise CollapseError(f"vertex {vertex.index} has its merged corner in the unbounded region")
        self.classes = UnionFind("ABCDEF")
        for corner in vertex.zero_corners:
            name = vertex.corner_name(corner)
            self.classes.union(name[0], name[1])
        if vertex.role == 'i':
            self.classes.union(self.letter_at(UNDER_OUT), "E")
        elif vertex.role == 'j':
            self.classes.union("A", "F")

    def position(self, letter):
        return self.crossing.letter_position(letter)

    def letter_at(self, position):
        return LETTERS[(position - self.crossing.over_in) % 4]

    def corner(self, name):
        """Corner index of a horizontal edge such as 'BC'."""
        return self.position(name[0])

    def corner_region(self, name):
        return self.vertex.regions[self.corner(name)]

    def arc(self, letter):
        return self.crossing.arcs[self.position(letter)]

    def same(self, a, b):
        return self.classes[a] == self.classes[b]

    def degenerate(self, letters):
        roots = {self.classes[x] for x in letters}
        return len(roots) < len(letters)

    def vertex_set(self, letters):
        return frozenset(self.classes[x] for x in letters)

    def thurston_survivors(self):
        """Surviving Thurston tetrahedra after dropping degenerate ones and cancelling pairs."""
        alive = [name for name in THURSTON_ORDER if not self.degenerate(name)]
        survivors = list(alive)
        for i, a in enumerate(alive):
            for b in alive[i + 1:]:
                if a in survivors and b in survivors and self.vertex_set(a) == self.vertex_set(b):
                    logger.debug(f"Vertex {self.vertex.index}: {a} and {b} cancel")
                    survivors.remove(a)
                    survivors.remove(b)
        return survivors

    def yokota_survivors(self):
        """Corner names whose Yokota tetrahedron XYEF survives."""
        alive = []
        for p in range(4):
            if p in self.vertex.open_corners or p in self.vertex.zero_corners:
                continue
            name = self.vertex.corner_name(p)
            if not self.degenerate(yokota_order(name)):
                alive.append(name)
        return alive

    def thurston_shape(self, name):
        """Shape of a Thurston tetrahedron as a monomial over region ids."""
        _, numerator, denominator = THURSTON[name]
        shape = Monomial.one()
        for corner in numerator:
            shape = shape * Monomial.var(self.corner_region(corner))
        for corner in denominator:
            shape = shape / Monomial.var(self.corner_region(corner))
        return shape

    def __str__(self):
        return f"Octahedron at {self.vertex}"
