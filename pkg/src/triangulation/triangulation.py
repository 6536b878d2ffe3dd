"""
Triangulation Module
--------------------
This module builds the Thurston (five tetrahedra per octahedron) and Yokota (four
tetrahedra per octahedron) ideal triangulations of a reduced graph, groups their
edges into glued classes and checks edge relations and a meridian cusp condition
at a point.
"""
import logging

import numpy as np
from networkx.utils import UnionFind

from ..config import ESSENTIAL_TOL
from ..diagram.pd import UNDER_IN, UNDER_OUT
from ..errors import NonEssentialPoint, TriangulationError
from ..numerics import shape_triple
from ..potential.builder import corner_ratio, region_mapping
from ..potential.monomial import Monomial
from .octahedron import Octahedron, THURSTON, tetrahedron_edges, yokota_order

# Configure logging
logger = logging.getLogger(__name__)

CORNER_KEYS = {"AB": "AB", "BC": "BC", "CD": "CD", "AD": "DA"}


class Tetrahedron:
    """An ideal tetrahedron with a shape monomial on its v0v1 edge."""

    def __init__(self, index, vertex, name, order, shape, corners=None):
        """
        Initialize a tetrahedron.

        Args:
            index (int): Position in the triangulation
            vertex (int): Crossing index of the octahedron it comes from
            name (str): 'BCDF'-style name
            order (str): Vertex letters v0..v3
            shape (Monomial): Shape parameter in the triangulation's variables
            corners (tuple, optional): Region ids of the shape's numerator and denominator
        """
        self.index = index
        self.vertex = vertex
        self.name = name
        self.order = order
        self.shape = shape
        self.corners = corners
        self.orientation = 1

    def edges(self):
        return tetrahedron_edges(self.order)

    def to_dict(self):
        return {
            'index': self.index,
            'vertex': self.vertex,
            'name': self.name,
            'order': self.order,
            'shape': self.shape.to_dict(),
            'orientation': self.orientation,
        }

    @classmethod
    def from_dict(cls, data):
        tet = cls(data['index'], data['vertex'], data['name'], data['order'],
                  Monomial.from_dict(data['shape']))
        tet.orientation = data.get('orientation', 1)
        return tet

    def __str__(self):
        return f"{self.name}_{self.vertex} ({self.shape})"


class EdgeClass:
    """A glued class of tetrahedron edges."""

    def __init__(self, index, members, keys, tag):
        """
        Args:
            index (int): Class id
            members (list): (tetrahedron index, letter pair, parameter index) triples
            keys (list): Gluing keys merged into the class
            tag (str): 'A' (horizontal), 'B' (along a strand) or 'C'
        """
        self.index = index
        self.members = members
        self.keys = keys
        self.tag = tag

    @property
    def regions(self):
        return sorted(k[1] for k in self.keys if k[0] == 'face')

    def product(self, shapes):
        value = complex(1.0)
        for tet, _, kind in self.members:
            value *= shape_triple(shapes[tet])[kind]
        return value

    def to_dict(self):
        return {
            'index': self.index,
            'tag': self.tag,
            'members': [[t, pair, kind] for t, pair, kind in self.members],
            'keys': [list(k) for k in self.keys],
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data['index'], [tuple(m) for m in data['members']],
                   [tuple(k) for k in data['keys']], data['tag'])


class Triangulation:
    """Tetrahedra with edge classes and meridian annuli."""

    def __init__(self, variant, tetrahedra, edge_classes, variable_count, meridians=None):
        self.variant = variant
        self.tetrahedra = tetrahedra
        self.edge_classes = edge_classes
        self.variable_count = variable_count
        self.meridians = list(meridians or [])

    def evaluate_shapes(self, point):
        return np.array([tet.shape.evaluate(point) for tet in self.tetrahedra], dtype=complex)

    def class_of_region(self, region):
        for edge_class in self.edge_classes:
            if region in edge_class.regions:
                return edge_class
        return None

    def volume(self, shapes):
        from ..numerics import bloch_wigner
        return float(sum(tet.orientation * bloch_wigner(u) for tet, u in zip(self.tetrahedra, shapes)))

    def to_dict(self):
        return {
            'variant': self.variant,
            'variable_count': self.variable_count,
            'tetrahedra': [t.to_dict() for t in self.tetrahedra],
            'edge_classes': [c.to_dict() for c in self.edge_classes],
            'meridians': [list(m) for m in self.meridians],
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data['variant'],
                   [Tetrahedron.from_dict(t) for t in data['tetrahedra']],
                   [EdgeClass.from_dict(c) for c in data['edge_classes']],
                   data['variable_count'],
                   [tuple(m) for m in data.get('meridians', [])])

    def __str__(self):
        return (f"Triangulation({self.variant}, {len(self.tetrahedra)} tetrahedra, "
                f"{len(self.edge_classes)} edge classes)")


def compute_stretches(graph):
    """
    Partition the arcs outside I and J into up- and down-stretches.

    Up-stretches continue where the strand passes over or through a removed
    crossing; down-stretches where it passes under or through a removed crossing.

    Returns:
        tuple: (up, down) dicts mapping arc id to the smallest arc of its stretch
    """
    diagram = graph.diagram
    open_arcs = graph.open_arcs
    arcs = [a for a in range(1, diagram.arc_count + 1) if a not in open_arcs]
    up = UnionFind(arcs)
    down = UnionFind(arcs)
    for arc in arcs:
        following = diagram.successor(arc)
        if following in open_arcs:
            continue
        c, p = diagram.head[arc]
        if c in graph.removed or p != UNDER_IN:
            up.union(arc, following)
        if c in graph.removed or p == UNDER_IN:
            down.union(arc, following)

    def labels(uf):
        result = {}
        for group in uf.to_sets():
            first = min(group)
            for arc in group:
                result[arc] = first
        return result

    return labels(up), labels(down)


def _edge_key(octahedron, pair, open_arcs, up, down):
    pair = "".join(sorted(pair))
    index = octahedron.vertex.index
    if pair in CORNER_KEYS:
        return ('face', octahedron.corner_region(CORNER_KEYS[pair]))
    if pair in ("AC", "BD"):
        return ('diag', index, pair)
    if pair == "EF":
        return ('ef', index)

    def arc_of(letters):
        for letter in letters:
            arc = octahedron.arc(letter)
            if arc not in open_arcs:
                return arc
        raise TriangulationError(f"edge {pair} at vertex {index} runs along I or J")

    if pair in ("BF", "DF"):
        return ('up', up[arc_of("AC")])
    if pair in ("AE", "CE"):
        return ('down', down[arc_of("BD")])
    if pair in ("AF", "CF"):
        return ('down', down[arc_of(pair[0])])
    return ('up', up[arc_of(pair[0])])


def _local_unions(octahedron, keys, open_arcs, up, down):
    """Union the keys of all letter pairs that one collapsed edge represents."""
    letters = "ABCDEF"
    roots = sorted({octahedron.classes[x] for x in letters})
    for i, a in enumerate(roots):
        for b in roots[i + 1:]:
            pair_keys = []
            for x in letters:
                for y in letters:
                    if octahedron.classes[x] == a and octahedron.classes[y] == b:
                        pair_keys.append(_edge_key(octahedron, x + y, open_arcs, up, down))
            first = pair_keys[0]
            keys[first]
            for key in pair_keys[1:]:
                keys.union(first, key)


def _edge_classes(graph, octahedra, tetrahedra):
    open_arcs = graph.open_arcs
    up, down = compute_stretches(graph)
    keys = UnionFind()
    for octahedron in octahedra.values():
        _local_unions(octahedron, keys, open_arcs, up, down)

    groups = {}
    for tet in tetrahedra:
        octahedron = octahedra[tet.vertex]
        for pair, kind in tet.edges():
            root = keys[_edge_key(octahedron, pair, open_arcs, up, down)]
            groups.setdefault(root, []).append((tet.index, pair, kind))

    key_sets = {}
    for group in keys.to_sets():
        key_sets[keys[next(iter(group))]] = sorted(group, key=repr)

    classes = []
    for root, members in sorted(groups.items(), key=lambda item: min(item[1])):
        class_keys = key_sets.get(root, [root])
        faces = [k for k in class_keys if k[0] == 'face']
        strands = [k for k in class_keys if k[0] in ('up', 'down')]
        tag = 'A' if faces else 'B' if strands else 'C'
        if len(faces) > 1:
            logger.warning(f"Edge class holds several regions {[k[1] for k in faces]}")
        if faces and strands:
            logger.info(f"Horizontal class of regions {[k[1] for k in faces]} merged with strand edges")
        classes.append(EdgeClass(len(classes), members, class_keys, tag))
    return classes


def _meridians(graph, tetrahedra):
    """Sides whose strand switches between over and under, with both end tetrahedra alive."""
    lookup = {(tet.vertex, tet.name): tet.index for tet in tetrahedra}
    found = []
    for side in graph.sides:
        tail_c, tail_p = side.tail
        head_c, head_p = side.head
        tail = graph.vertex_of.get(tail_c)
        head = graph.vertex_of.get(head_c)
        if tail is None or head is None:
            continue
        if tail_p == UNDER_OUT and head_p == head.crossing.over_in:
            head_name = 'ABDF'
            tail_name = 'ACDE' if tail.sign > 0 else 'ABCE'
        elif tail_p == tail.crossing.over_out and head_p == UNDER_IN:
            head_name = 'ABCE' if head.sign > 0 else 'ACDE'
            tail_name = 'BCDF'
        else:
            continue
        if (head_c, head_name) in lookup and (tail_c, tail_name) in lookup:
            found.append((side.index, lookup[(head_c, head_name)], lookup[(tail_c, tail_name)]))
    return found


def build_thurston(graph, assignment):
    """
    Build the Thurston triangulation with shapes in the region variables.

    Args:
        graph (TangleGraph): Accepted reduced graph
        assignment (VariableAssignment): Variable numbering

    Returns:
        Triangulation: Surviving tetrahedra, edge classes and meridians
    """
    mapping = region_mapping(assignment)
    octahedra = {v.index: Octahedron(v) for v in graph.vertices}
    tetrahedra = []
    survivors = {}
    for index, octahedron in octahedra.items():
        survivors[index] = octahedron.thurston_survivors()
        for name in survivors[index]:
            symbolic = octahedron.thurston_shape(name)
            shape = symbolic.substitute(mapping)
            if shape.zero:
                raise TriangulationError(f"{name} at vertex {index} touches the unbounded region")
            if shape.is_constant:
                logger.warning(f"{name} at vertex {index} has constant shape")
            tetrahedra.append(Tetrahedron(len(tetrahedra), index, name, THURSTON[name][0], shape))
    classes = _edge_classes(graph, octahedra, tetrahedra)
    meridians = _meridians(graph, tetrahedra)
    triangulation = Triangulation('thurston', tetrahedra, classes, assignment.m, meridians)
    logger.info(f"Built {triangulation}")
    return triangulation


def build_yokota(graph, assignment):
    """
    Build the Yokota triangulation with shapes in the side variables.

    Args:
        graph (TangleGraph): Accepted reduced graph
        assignment (VariableAssignment): Variable numbering

    Returns:
        Triangulation: One tetrahedron per surviving horizontal edge
    """
    octahedra = {v.index: Octahedron(v) for v in graph.vertices}
    tetrahedra = []
    for index, octahedron in octahedra.items():
        vertex = octahedron.vertex
        for name in octahedron.yokota_survivors():
            t = corner_ratio(vertex, octahedron.corner(name), assignment)
            if t.is_constant:
                logger.warning(f"Corner {name} at vertex {index} has constant ratio; skipped")
                continue
            order = yokota_order(name)
            tetrahedra.append(Tetrahedron(len(tetrahedra), index, order, order, t))
    classes = _edge_classes(graph, octahedra, tetrahedra)
    triangulation = Triangulation('yokota', tetrahedra, classes, assignment.g)
    logger.info(f"Built {triangulation}")
    return triangulation


def check_essential(shapes, tol=ESSENTIAL_TOL):
    """Raise NonEssentialPoint if a shape is within tol of 0, 1 or infinity."""
    for i, u in enumerate(shapes):
        if not np.isfinite(u) or abs(u) < tol or abs(u - 1) < tol or abs(u) > 1.0 / tol:
            raise NonEssentialPoint(f"shape {i} = {u} is degenerate")


def verify_edge_relations(triangulation, point=None, shapes=None):
    """
    Residual |product - 1| of each edge class at a point.

    Args:
        triangulation (Triangulation): The triangulation
        point (sequence, optional): Variable values
        shapes (sequence, optional): Tetrahedron shapes, overriding point

    Returns:
        dict: Per-class residuals with class tags; B and C classes are marked structural
    """
    if shapes is None:
        shapes = triangulation.evaluate_shapes(point)
    check_essential(shapes)
    rows = []
    for edge_class in triangulation.edge_classes:
        residual = abs(edge_class.product(shapes) - 1.0)
        rows.append({
            'class': edge_class.index,
            'tag': edge_class.tag,
            'degree': len(edge_class.members),
            'structural': edge_class.tag != 'A',
            'residual': float(residual),
        })
    max_residual = max((r['residual'] for r in rows), default=0.0)
    logger.debug(f"Edge relations: max residual {max_residual:.3e}")
    return {'classes': rows, 'max_residual': max_residual}


def verify_cusp(triangulation, point=None, shapes=None):
    """
    Meridian holonomy residual along the first usable side.

    The two shapes compared along a meridian are the same ratio of region values,
    so the residual vanishes at every point and the check is structural: it
    confirms the gluing, not the solution.

    Returns:
        dict: 'residual' (None when no meridian annulus survives), 'structural'
        and per-side values
    """
    if shapes is None:
        shapes = triangulation.evaluate_shapes(point)
    check_essential(shapes)
    rows = []
    for side, head, tail in triangulation.meridians:
        rows.append({'side': side, 'residual': float(abs(shapes[head] / shapes[tail] - 1.0)), 'structural': True})
    if not rows:
        logger.warning("No meridian annulus survives in this triangulation")
    return {'residual': rows[0]['residual'] if rows else None, 'structural': True, 'meridians': rows}
