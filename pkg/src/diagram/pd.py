"""
Planar Diagram Module
---------------------
This module provides the KnotDiagram class and the PD-code parser.

X(a,b,c,d) lists the four arcs at a crossing counterclockwise, starting from the
incoming under-strand. Position 0 is under-in, 2 is under-out, 1 and 3 carry the
over-strand. The over-strand runs from d to b (positive crossing) when b = d+1
modulo the arc count, otherwise from b to d (negative crossing).
"""
import logging
import re

from networkx.utils import UnionFind

from ..errors import ParseError, ValidationError

# Configure logging
logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")
_HEADER = re.compile(r"^\s*knot\s+(\S+)\s*$")

UNDER_IN = 0
UNDER_OUT = 2


class Crossing:
    """A crossing of an oriented knot diagram."""

    def __init__(self, index, arcs, over_in):
        """
        Initialize a crossing.

        Args:
            index (int): Position of the crossing in the PD code
            arcs (tuple): Four arc ids, counterclockwise from the incoming under-strand
            over_in (int): Position (1 or 3) of the incoming over-strand
        """
        self.index = index
        self.arcs = tuple(arcs)
        self.over_in = over_in

    @property
    def sign(self):
        return 1 if self.over_in == 3 else -1

    @property
    def over_out(self):
        return (self.over_in + 2) % 4

    def is_incoming(self, position):
        return position in (UNDER_IN, self.over_in)

    def letter_position(self, letter):
        """Position of an octahedron letter A..D; A is the incoming over-strand."""
        return (self.over_in + "ABCD".index(letter)) % 4

    def to_dict(self):
        return {'index': self.index, 'arcs': list(self.arcs), 'sign': self.sign}

    def __str__(self):
        return f"X({','.join(str(a) for a in self.arcs)})"


class KnotDiagram:
    """Oriented knot diagram given by signed crossings over numbered arcs."""

    def __init__(self, crossings, arc_count, name=None):
        """
        Initialize a validated diagram.

        Args:
            crossings (list): Crossing objects
            arc_count (int): Number of arcs
            name (str, optional): Knot name from the PD header
        """
        self.crossings = crossings
        self.arc_count = arc_count
        self.name = name
        self.tail = {}
        self.head = {}
        for crossing in crossings:
            for position, arc in enumerate(crossing.arcs):
                end = (crossing.index, position)
                if crossing.is_incoming(position):
                    if arc in self.head:
                        raise ValidationError(f"arc {arc} enters two crossings")
                    self.head[arc] = end
                else:
                    if arc in self.tail:
                        raise ValidationError(f"arc {arc} leaves two crossings")
                    self.tail[arc] = end
        self._check_single_component()
        self.faces, self.face_of = self._compute_faces()
        if len(self.faces) != len(crossings) + 2:
            raise ValidationError(
                f"diagram is not planar: {len(self.faces)} faces for {len(crossings)} crossings")

    def _check_single_component(self):
        visited = set()
        arc = 1
        while arc not in visited:
            visited.add(arc)
            arc = self.successor(arc)
        if len(visited) != self.arc_count:
            raise ValidationError(
                f"diagram has more than one component ({len(visited)} of {self.arc_count} arcs traced)")

    def _compute_faces(self):
        corners = [(c.index, p) for c in self.crossings for p in range(4)]
        faces = UnionFind(corners)
        for arc in range(1, self.arc_count + 1):
            c1, p1 = self.tail[arc]
            c2, p2 = self.head[arc]
            faces.union((c1, p1), (c2, (p2 - 1) % 4))
            faces.union((c1, (p1 - 1) % 4), (c2, p2))
        groups = sorted((sorted(group) for group in faces.to_sets()), key=lambda g: g[0])
        face_of = {}
        for face_id, group in enumerate(groups):
            for corner in group:
                face_of[corner] = face_id
        return [frozenset(group) for group in groups], face_of

    def crossing(self, index):
        return self.crossings[index]

    def arc_at(self, index, position):
        return self.crossings[index].arcs[position % 4]

    def successor(self, arc):
        """Next arc along the orientation, through the head crossing on the same strand."""
        c, p = self.head[arc]
        return self.arc_at(c, p + 2)

    def predecessor(self, arc):
        c, p = self.tail[arc]
        return self.arc_at(c, p + 2)

    def left_face(self, arc):
        c, p = self.tail[arc]
        return self.face_of[(c, p)]

    def right_face(self, arc):
        c, p = self.tail[arc]
        return self.face_of[(c, (p - 1) % 4)]

    def face_arcs(self, face):
        """Arcs bordering a face."""
        return sorted(a for a in range(1, self.arc_count + 1)
                      if face in (self.left_face(a), self.right_face(a)))

    def serialize(self):
        """Canonical PD text."""
        body = " ".join(str(c) for c in self.crossings)
        if self.name:
            return f"knot {self.name}\n{body}\n"
        return f"{body}\n"

    def to_dict(self):
        return {
            'name': self.name,
            'arc_count': self.arc_count,
            'crossings': [c.to_dict() for c in self.crossings],
        }

    def __str__(self):
        return f"KnotDiagram({self.name or 'unnamed'}, {len(self.crossings)} crossings)"


def _over_in_position(arcs, arc_count):
    b, d = arcs[1], arcs[3]
    if d % arc_count + 1 == b:
        return 3
    if b % arc_count + 1 == d:
        return 1
    raise ValidationError(f"over-strand arcs {b}, {d} are not consecutive")


def parse_pd(text, allow_kinks=False):
    """
    Parse PD text into a validated KnotDiagram.

    Args:
        text (str): Whitespace-separated X(a,b,c,d) tokens, '#' comments and an
            optional 'knot <name>' header line
        allow_kinks (bool): Accept crossings that repeat an arc

    Returns:
        KnotDiagram: The validated diagram

    Raises:
        ParseError: On malformed text
        ValidationError: On arc usage, orientation, component or planarity errors
    """
    name = None
    tuples = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        header = _HEADER.match(line)
        if header:
            name = header.group(1)
            continue
        position = 0
        for match in _TOKEN.finditer(line):
            if line[position:match.start()].strip():
                raise ParseError(f"unexpected text {line[position:match.start()].strip()!r}")
            tuples.append(tuple(int(g) for g in match.groups()))
            position = match.end()
        if line[position:].strip():
            raise ParseError(f"unexpected text {line[position:].strip()!r}")
    if not tuples:
        raise ParseError("no crossings found")

    counts = {}
    for arcs in tuples:
        for arc in arcs:
            counts[arc] = counts.get(arc, 0) + 1
    arc_count = len(counts)
    bad = sorted(arc for arc, count in counts.items() if count != 2)
    if bad:
        raise ValidationError(f"arcs {bad} are not used exactly twice")
    if set(counts) != set(range(1, arc_count + 1)):
        raise ValidationError(f"arc ids must be 1..{arc_count}")

    crossings = []
    for index, arcs in enumerate(tuples):
        if len(set(arcs)) < 4 and not allow_kinks:
            raise ValidationError(f"crossing X{arcs} is a kink")
        if arcs[0] % arc_count + 1 != arcs[2]:
            raise ValidationError(f"under-strand arcs {arcs[0]}, {arcs[2]} are not consecutive")
        crossings.append(Crossing(index, arcs, _over_in_position(arcs, arc_count)))

    diagram = KnotDiagram(crossings, arc_count, name)
    logger.info(f"Parsed {diagram}")
    return diagram


def load_pd(path, allow_kinks=False):
    """Read and parse a PD file."""
    with open(path, 'r') as f:
        text = f.read()
    return parse_pd(text, allow_kinks=allow_kinks)
