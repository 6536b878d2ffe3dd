"""
Solution Conversion
-------------------
This module converts solutions between the side variables z and the region
variables w. Yokota shapes at each octahedron are carried to Thurston shapes by
the 4-5 and 3-2 moves and back, and the variables are then recovered region by
region (or side by side) along a breadth-first traversal.
"""
import logging

import networkx as nx
import numpy as np

from ..config import ESSENTIAL_TOL, REGION_SEEDS
from ..errors import ConsistencyError, DomainError, NonEssentialImage
from ..numerics import shape_triple
from ..potential.builder import corner_ratio, region_mapping
from ..triangulation.octahedron import Octahedron, THURSTON, THURSTON_ORDER, TRANSPORT, tetrahedron_edges

# Configure logging
logger = logging.getLogger(__name__)


def _degenerate(value):
    return (not np.isfinite(value) or abs(value) < ESSENTIAL_TOL or abs(value - 1) < ESSENTIAL_TOL
            or abs(value) > 1.0 / ESSENTIAL_TOL)


def _triple(value, what):
    if _degenerate(value):
        raise NonEssentialImage(f"{what} = {value} is degenerate")
    try:
        return shape_triple(value)
    except DomainError as e:
        raise NonEssentialImage(str(e))


def yokota_shapes(graph, assignment, z):
    """Yokota shape of every surviving corner, keyed by (crossing, corner name)."""
    shapes = {}
    for vertex in graph.vertices:
        octahedron = Octahedron(vertex)
        for name in octahedron.yokota_survivors():
            ratio = corner_ratio(vertex, octahedron.corner(name), assignment)
            if ratio.is_constant:
                continue
            shapes[(vertex.index, name)] = ratio.evaluate(z)
    return shapes


def thurston_from_yokota(octahedron, t):
    """
    Thurston shapes of one octahedron from its Yokota shapes.

    Args:
        octahedron (Octahedron): Local model
        t (dict): Corner name -> Yokota shape; missing corners contribute 1

    Returns:
        dict: Tetrahedron name -> shape
    """
    survivors = octahedron.thurston_survivors()
    u = {}
    for name in THURSTON_ORDER[:4]:
        first, second = TRANSPORT[name]
        value = complex(1.0)
        if first in t:
            value *= _triple(t[first], f"t_{first}")[1]
        if second in t:
            value *= _triple(t[second], f"t_{second}")[2]
        u[name] = value
    u['ABCD'] = 1.0 / (u['ABDF'] * u['BCDF'])
    u = {name: u[name] for name in survivors}
    for name, value in u.items():
        if _degenerate(value):
            raise NonEssentialImage(f"{name} at vertex {octahedron.vertex.index} = {value}")
    return u


def yokota_from_thurston(octahedron, u):
    """
    Yokota shapes of one octahedron from its Thurston shapes.

    Each surviving horizontal edge collects the shape parameters of the Thurston
    edges that coincide with it after collapsing.
    """
    t = {}
    for name in octahedron.yokota_survivors():
        target = {octahedron.classes[name[0]], octahedron.classes[name[1]]}
        value = complex(1.0)
        for tet, shape in u.items():
            triple = _triple(shape, f"{tet} at vertex {octahedron.vertex.index}")
            for pair, kind in tetrahedron_edges(THURSTON[tet][0]):
                if {octahedron.classes[pair[0]], octahedron.classes[pair[1]]} == target:
                    value *= triple[kind]
        if _degenerate(value):
            raise NonEssentialImage(f"t_{name} at vertex {octahedron.vertex.index} = {value}")
        t[name] = value
    return t


def _propagate(graph_edges, sources, what):
    """Values on nodes from ratio edges value[a] = ratio * value[b], starting at fixed nodes."""
    g = nx.Graph()
    root = ('root',)
    g.add_node(root)
    for node, value in sources.items():
        g.add_edge(root, node, constraints=[(node, root, value)])
    for a, b, ratio in graph_edges:
        if g.has_edge(a, b):
            g[a][b]['constraints'].append((a, b, ratio))
        else:
            g.add_edge(a, b, constraints=[(a, b, ratio)])
    values = {root: complex(1.0)}
    for parent, child in nx.bfs_edges(g, root):
        a, b, ratio = g[parent][child]['constraints'][0]
        values[child] = ratio * values[b] if a == child else values[a] / ratio
    mismatch = 0.0
    for a, b, data in g.edges(data=True):
        for x, y, ratio in data['constraints']:
            if x in values and y in values:
                mismatch = max(mismatch, abs(values[x] - ratio * values[y]) / max(abs(values[x]), 1.0))
    logger.debug(f"{what} propagation mismatch {mismatch:.3e}")
    values.pop(root)
    return values, mismatch


def thurston_shapes_from_z(graph, assignment, z):
    t_all = yokota_shapes(graph, assignment, z)
    shapes = {}
    for vertex in graph.vertices:
        octahedron = Octahedron(vertex)
        t = {name: value for (c, name), value in t_all.items() if c == vertex.index}
        for name, value in thurston_from_yokota(octahedron, t).items():
            shapes[(vertex.index, name)] = value
    return shapes


def _region_edges(graph):
    """(vertex, tetrahedron, numerator region, denominator region) for each surviving Thurston tetrahedron but ABCD."""
    edges = []
    for vertex in graph.vertices:
        octahedron = Octahedron(vertex)
        for name in octahedron.thurston_survivors():
            if name == 'ABCD':
                continue
            _, numerator, denominator = THURSTON[name]
            edges.append((vertex.index, name, octahedron.corner_region(numerator[0]),
                          octahedron.corner_region(denominator[0])))
    return edges


def convert_z_to_w(z, graph, assignment, tol=1e-6):
    """
    Region values induced by a side solution.

    Args:
        z (array): Side variable values
        graph (TangleGraph): The reduced graph
        assignment (VariableAssignment): Variable numbering

    Returns:
        numpy.ndarray: Region variable values

    Raises:
        NonEssentialImage: If an induced Thurston shape is degenerate
        ConsistencyError: If a region cannot be reached or the ratios disagree
    """
    shapes = thurston_shapes_from_z(graph, assignment, z)
    edges = [(a, b, shapes[(c, name)]) for c, name, a, b in _region_edges(graph)]
    values, mismatch = _propagate(edges, {assignment.unit: 1.0}, "Region")
    if mismatch > tol:
        raise ConsistencyError(f"region ratios disagree by {mismatch:.3e}")
    w = np.zeros(assignment.m, dtype=complex)
    for region, index in assignment.region_index.items():
        if region not in values:
            raise ConsistencyError(f"region {region} is not reached by any tetrahedron")
        w[index] = values[region]
    return w


def region_seeds(graph, assignment, count=REGION_SEEDS, rng_seed=0):
    """
    Starting points for the region system with every Thurston shape set to one value.

    Region values are propagated from the unit region along the tetrahedra and
    disagreeing ratios are ignored. The shapes are exp(+-i*pi/3), exp(+-2*i*pi/3) and +-i,
    then count random shapes near the first two.

    Returns:
        list: Region value vectors
    """
    rng = np.random.default_rng(rng_seed)
    edges = _region_edges(graph)
    shapes = [complex(np.exp(1j * np.pi * k)) for k in (1 / 3, -1 / 3, 2 / 3, -2 / 3, 1 / 2, -1 / 2)]
    for _ in range(count):
        base = np.exp(1j * np.pi / 3) * (1 + 0.1 * complex(*rng.standard_normal(2)))
        shapes.append(base if rng.uniform() < 0.5 else np.conj(base))
    seeds = []
    for shape in shapes:
        values, _ = _propagate([(a, b, shape) for _, _, a, b in edges], {assignment.unit: 1.0}, "Seed")
        w = np.full(assignment.m, shape, dtype=complex)
        for region, index in assignment.region_index.items():
            if region in values:
                w[index] = values[region]
        seeds.append(w)
    return seeds


def convert_w_to_z(w, graph, assignment, tol=1e-6):
    """
    Side values induced by a region solution.

    Args:
        w (array): Region variable values
        graph (TangleGraph): The reduced graph
        assignment (VariableAssignment): Variable numbering

    Returns:
        numpy.ndarray: Side variable values, non-contributing sides fixed to 1

    Raises:
        NonEssentialImage: If an induced Yokota shape is degenerate
        ConsistencyError: If a side cannot be reached or the ratios disagree
    """
    mapping = region_mapping(assignment)
    edges = []
    for vertex in graph.vertices:
        octahedron = Octahedron(vertex)
        u = {name: octahedron.thurston_shape(name).substitute(mapping).evaluate(w)
             for name in octahedron.thurston_survivors()}
        for name, value in yokota_from_thurston(octahedron, u).items():
            p = octahedron.corner(name)
            ahead = vertex.sides[(p + 1) % 4]
            behind = vertex.sides[p]
            edges.append((('side', ahead), ('side', behind), value))
    constants = {('side', s.index): 1.0 for s in graph.sides if not s.contributing}
    values, mismatch = _propagate(edges, constants, "Side")
    if mismatch > tol:
        raise ConsistencyError(f"side ratios disagree by {mismatch:.3e}")
    z = np.zeros(assignment.g, dtype=complex)
    for side, index in assignment.side_index.items():
        if ('side', side) not in values:
            raise ConsistencyError(f"side {side} is not reached by any tetrahedron")
        z[index] = values[('side', side)]
    return z
