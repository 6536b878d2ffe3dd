"""
Tangle Module
-------------
This module opens a knot diagram along one side into a (1,1)-tangle and builds the
reduced graph G: the free ends I and J are extended to the last under-crossing and
the first over-crossing, the crossings they pass are removed, and the faces they
separate are merged into regions.
"""
import logging

from networkx.utils import UnionFind

from ..errors import AssumptionViolation, EndpointClash
from .pd import UNDER_IN, UNDER_OUT

# Configure logging
logger = logging.getLogger(__name__)

CORNER_NAMES = ("AB", "BC", "CD", "DA")


class Side:
    """A side of G: a chain of diagram arcs between two kept crossings."""

    def __init__(self, index, arcs, tail, head, left, right, contributing):
        self.index = index
        self.arcs = tuple(arcs)
        self.tail = tail
        self.head = head
        self.left = left
        self.right = right
        self.contributing = contributing

    def to_dict(self):
        return {
            'index': self.index,
            'arcs': list(self.arcs),
            'tail': list(self.tail),
            'head': list(self.head),
            'regions': [self.left, self.right],
            'contributing': self.contributing,
        }

    def __str__(self):
        flag = "contributing" if self.contributing else "constant"
        return f"Side {self.index} arcs={list(self.arcs)} ({flag})"


class Region:
    """A region of G: one or more diagram faces merged across I and J."""

    def __init__(self, index, faces, arcs, unbounded=False):
        self.index = index
        self.faces = frozenset(faces)
        self.arcs = tuple(arcs)
        self.unbounded = unbounded

    def to_dict(self):
        return {
            'index': self.index,
            'faces': sorted(self.faces),
            'arcs': list(self.arcs),
            'unbounded': self.unbounded,
        }

    def __str__(self):
        return f"Region {self.index} arcs={list(self.arcs)}{' (unbounded)' if self.unbounded else ''}"


class Vertex:
    """A kept crossing of G with its corner regions and side incidences."""

    def __init__(self, crossing, role, regions, sides, unbounded):
        """
        Initialize a vertex.

        Args:
            crossing (Crossing): The diagram crossing
            role (str): 'full', 'i' (end of I) or 'j' (end of J)
            regions (tuple): Region id at each corner 0..3
            sides (tuple): Side id at each position 0..3, None where I or J attaches
            unbounded (int): Id of the unbounded region
        """
        self.crossing = crossing
        self.role = role
        self.regions = tuple(regions)
        self.sides = tuple(sides)
        self.zero_corners = tuple(p for p in range(4) if self.regions[p] == unbounded)

    @property
    def index(self):
        return self.crossing.index

    @property
    def sign(self):
        return self.crossing.sign

    @property
    def valence(self):
        return 4 if self.role == 'full' else 3

    @property
    def open_position(self):
        """Position where I or J attaches, None at a full vertex."""
        for position, side in enumerate(self.sides):
            if side is None:
                return position
        return None

    @property
    def open_corners(self):
        """Corners beside the I or J attachment; they share one merged region."""
        position = self.open_position
        if position is None:
            return ()
        return ((position - 1) % 4, position)

    def corner_name(self, corner):
        return CORNER_NAMES[(corner - self.crossing.over_in) % 4]

    @property
    def collapsed_horizontal(self):
        """Horizontal corner edges collapsed to a point by the unbounded region."""
        return tuple(self.corner_name(p) for p in self.zero_corners)

    def to_dict(self):
        return {
            'crossing': self.index,
            'sign': self.sign,
            'role': self.role,
            'valence': self.valence,
            'regions': list(self.regions),
            'sides': list(self.sides),
            'collapsed': list(self.collapsed_horizontal),
        }

    def __str__(self):
        return f"Vertex {self.index} ({'+' if self.sign > 0 else '-'}, {self.role})"


class TangleGraph:
    """The reduced graph G obtained from a diagram opened at one side."""

    def __init__(self, diagram, split_side, i_arcs, j_arcs, removed,
                 i_endpoint, j_endpoint, vertices, sides, regions, unbounded):
        self.diagram = diagram
        self.split_side = split_side
        self.i_arcs = tuple(i_arcs)
        self.j_arcs = tuple(j_arcs)
        self.removed = frozenset(removed)
        self.i_endpoint = i_endpoint
        self.j_endpoint = j_endpoint
        self.vertices = vertices
        self.sides = sides
        self.regions = regions
        self.unbounded = unbounded
        self.side_at = {}
        for side in sides:
            self.side_at[side.tail] = side.index
            self.side_at[side.head] = side.index
        self.vertex_of = {v.index: v for v in vertices}
        self.default_unit = self._default_unit()

    @property
    def open_arcs(self):
        return frozenset(self.i_arcs) | frozenset(self.j_arcs)

    def bounded_regions(self):
        return [r for r in self.regions if not r.unbounded]

    def contributing_sides(self):
        return [s for s in self.sides if s.contributing]

    def region_vertex_count(self, region):
        return sum(1 for v in self.vertices if region in v.regions)

    def _default_unit(self):
        bounded = self.bounded_regions()
        if not bounded:
            return None
        best = max(bounded, key=lambda r: (self.region_vertex_count(r.index), -r.index))
        return best.index

    def euler_characteristic(self):
        return len(self.vertices) - len(self.sides) + len(self.regions)

    def to_dict(self):
        return {
            'split_side': self.split_side,
            'i_arcs': list(self.i_arcs),
            'j_arcs': list(self.j_arcs),
            'removed': sorted(self.removed),
            'i_endpoint': self.i_endpoint,
            'j_endpoint': self.j_endpoint,
            'vertices': [v.to_dict() for v in self.vertices],
            'sides': [s.to_dict() for s in self.sides],
            'regions': [r.to_dict() for r in self.regions],
            'unbounded': self.unbounded,
            'unit': self.default_unit,
        }

    def __str__(self):
        return (f"TangleGraph(split={self.split_side}, {len(self.vertices)} vertices, "
                f"{len(self.sides)} sides, {len(self.regions)} regions)")


def _extend_backwards(diagram, split_side):
    """Arcs of I and the crossings it passes over, ending where it is under-out."""
    arcs = [split_side]
    removed = []
    current = split_side
    while True:
        c, p = diagram.tail[current]
        if p == UNDER_OUT:
            return arcs, removed, c
        removed.append(c)
        current = diagram.predecessor(current)
        if current == split_side or len(arcs) > diagram.arc_count:
            raise AssumptionViolation(f"I wraps around the whole diagram from side {split_side}")
        arcs.append(current)


def _extend_forwards(diagram, split_side):
    """Arcs of J and the crossings it passes under, ending where it is over-in."""
    arcs = [split_side]
    removed = []
    current = split_side
    while True:
        c, p = diagram.head[current]
        if p != UNDER_IN:
            return arcs, removed, c
        removed.append(c)
        current = diagram.successor(current)
        if current == split_side or len(arcs) > diagram.arc_count:
            raise AssumptionViolation(f"J wraps around the whole diagram from side {split_side}")
        arcs.append(current)


def open_tangle(diagram, split_side):
    """
    Open a diagram along one side and reduce it to the graph G.

    Args:
        diagram (KnotDiagram): The knot diagram
        split_side (int): Arc id to split open

    Returns:
        TangleGraph: The reduced graph

    Raises:
        EndpointClash: If the ends of I and J land on the same crossing
        AssumptionViolation: If I or J cannot be extended as required
    """
    if split_side not in diagram.tail:
        raise AssumptionViolation(f"side {split_side} does not exist")

    i_arcs, i_removed, i_endpoint = _extend_backwards(diagram, split_side)
    j_arcs, j_removed, j_endpoint = _extend_forwards(diagram, split_side)
    removed = set(i_removed) | set(j_removed)

    if i_endpoint == j_endpoint:
        raise EndpointClash(f"I and J both end at crossing {i_endpoint} when splitting side {split_side}")
    if i_endpoint in removed or j_endpoint in removed:
        raise AssumptionViolation(f"an end of I or J lies on a removed crossing (side {split_side})")
    if set(i_arcs) & set(j_arcs) != {split_side}:
        raise AssumptionViolation(f"I and J overlap when splitting side {split_side}")

    open_arcs = set(i_arcs) | set(j_arcs)

    # Regions: faces merged across every arc of I and J
    faces = UnionFind(range(len(diagram.faces)))
    for arc in open_arcs:
        faces.union(diagram.left_face(arc), diagram.right_face(arc))
    groups = [sorted(group) for group in faces.to_sets()]
    group_arcs = []
    for group in groups:
        arcs = sorted({a for face in group for a in diagram.face_arcs(face)})
        group_arcs.append(arcs)
    order = sorted(range(len(groups)), key=lambda i: group_arcs[i])
    region_of_face = {}
    regions = []
    outer_face = diagram.left_face(split_side)
    unbounded = None
    for new_index, old_index in enumerate(order):
        for face in groups[old_index]:
            region_of_face[face] = new_index
        is_unbounded = outer_face in groups[old_index]
        if is_unbounded:
            unbounded = new_index
        regions.append(Region(new_index, groups[old_index], group_arcs[old_index], is_unbounded))

    # Sides: arc chains running through removed crossings
    chains = []
    covered = set()
    for arc in range(1, diagram.arc_count + 1):
        if arc in open_arcs or diagram.tail[arc][0] in removed:
            continue
        chain = [arc]
        while diagram.head[chain[-1]][0] in removed:
            following = diagram.successor(chain[-1])
            if following in open_arcs:
                raise AssumptionViolation(f"side through arc {arc} runs into I or J")
            chain.append(following)
        covered.update(chain)
        chains.append(chain)
    missing = set(range(1, diagram.arc_count + 1)) - open_arcs - covered
    if missing:
        raise AssumptionViolation(f"arcs {sorted(missing)} form a closed loop through removed crossings")
    chains.sort(key=lambda chain: min(chain))

    sides = []
    for index, chain in enumerate(chains):
        left = region_of_face[diagram.left_face(chain[0])]
        right = region_of_face[diagram.right_face(chain[0])]
        contributing = unbounded not in (left, right)
        sides.append(Side(index, chain, diagram.tail[chain[0]], diagram.head[chain[-1]],
                          left, right, contributing))
    side_at = {}
    for side in sides:
        side_at[side.tail] = side.index
        side_at[side.head] = side.index

    vertices = []
    for crossing in diagram.crossings:
        c = crossing.index
        if c in removed:
            continue
        role = 'i' if c == i_endpoint else 'j' if c == j_endpoint else 'full'
        corner_regions = tuple(region_of_face[diagram.face_of[(c, p)]] for p in range(4))
        vertex_sides = tuple(side_at.get((c, p)) for p in range(4))
        vertices.append(Vertex(crossing, role, corner_regions, vertex_sides, unbounded))

    graph = TangleGraph(diagram, split_side, i_arcs, j_arcs, removed, i_endpoint, j_endpoint,
                        vertices, sides, regions, unbounded)
    logger.info(f"Opened side {split_side}: {graph}; removed crossings {sorted(removed)}")
    return graph


def auto_open(diagram):
    """
    Try split sides in arc order and return the first admissible tangle.

    Args:
        diagram (KnotDiagram): The knot diagram

    Returns:
        TangleGraph: The first graph passing open_tangle and check_assumptions

    Raises:
        AssumptionViolation: If no side gives an admissible graph
    """
    from .assumptions import check_assumptions

    reasons = []
    for arc in range(1, diagram.arc_count + 1):
        try:
            graph = open_tangle(diagram, arc)
        except AssumptionViolation as e:
            logger.warning(f"Split side {arc} rejected: {str(e)}")
            reasons.append(f"{arc}: {str(e)}")
            continue
        report = check_assumptions(graph)
        if report.accepted:
            return graph
        logger.warning(f"Split side {arc} rejected: {report}")
        reasons.append(f"{arc}: {report}")
    logger.error(f"No admissible split side for {diagram}")
    raise AssumptionViolation(f"no admissible split side ({'; '.join(reasons)})")
