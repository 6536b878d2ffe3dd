"""
Potential Builder
-----------------
This module builds the side potential V(z) and the region potential W(w) of a
reduced graph, vertex by vertex, from the corner ratios of the sides and from the
eight crossing functions P1..P4 (positive) and N1..N4 (negative).
"""
import logging
from fractions import Fraction

from ..errors import VariantUnavailable
from .function import PotentialFunction
from .monomial import Monomial

# Configure logging
logger = logging.getLogger(__name__)

# Li2 terms, constant (times pi^2/6) and the log-log term of each crossing function
CROSSING_TABLE = {
    (1, 1): ("-l/m -l/k +jl/km +m/j +k/j", -1, (+1, "m/j", "k/j")),
    (1, 2): ("+m/l -l/k -km/jl +m/j -j/k", +1, (-1, "k/l", "k/j")),
    (1, 3): ("+m/l +k/l +jl/km -j/m -j/k", -1, (+1, "m/l", "k/l")),
    (1, 4): ("-l/m +k/l -km/jl -j/m +k/j", +1, (-1, "m/l", "m/j")),
    (-1, 1): ("+l/m +l/k -jl/km -m/j -k/j", +1, (-1, "j/m", "j/k")),
    (-1, 2): ("-m/l +l/k +km/jl -m/j +j/k", -1, (+1, "l/k", "j/k")),
    (-1, 3): ("-m/l -k/l -jl/km +j/m +j/k", +1, (-1, "l/m", "l/k")),
    (-1, 4): ("+l/m -k/l +km/jl +j/m -k/j", -1, (+1, "l/m", "j/m")),
}

# Variant whose log-log term avoids the given corner letter
VARIANT_AVOIDING = {'l': 1, 'm': 2, 'j': 3, 'k': 4}


def _ratio(text, symbols):
    numerator, denominator = text.split("/")
    monomial = Monomial.one()
    for letter in numerator:
        monomial = monomial * Monomial.var(symbols[letter])
    for letter in denominator:
        monomial = monomial / Monomial.var(symbols[letter])
    return monomial


def crossing_function(sign, f, j=0, k=1, l=2, m=3, variable_count=4, names=None):
    """
    One of the crossing functions P1..P4, N1..N4 over arbitrary symbols.

    Args:
        sign (int): Crossing sign, +1 for P and -1 for N
        f (int): Variant 1..4
        j, k, l, m (int): Symbols of the four corner regions; equal symbols merge corners
        variable_count (int): Number of variables of the result
        names (list, optional): Display names

    Returns:
        PotentialFunction: The crossing function, uncollected
    """
    dilogs, constant, (loglog_coef, left, right) = CROSSING_TABLE[(sign, f)]
    symbols = {'j': j, 'k': k, 'l': l, 'm': m}
    dilog_terms = []
    for token in dilogs.split():
        coef = 1 if token[0] == "+" else -1
        dilog_terms.append((coef, _ratio(token[1:], symbols)))
    loglog_terms = [(loglog_coef, _ratio(left, symbols), _ratio(right, symbols))]
    if names is None and variable_count == 4:
        names = ["wj", "wk", "wl", "wm"]
    return PotentialFunction(dilog_terms, loglog_terms, Fraction(constant, 6), variable_count, names)


def corner_regions(vertex):
    """Regions j (between outgoing strands), k, l (between incoming strands), m."""
    r = vertex.regions
    if vertex.sign > 0:
        return {'j': r[1], 'k': r[2], 'l': r[3], 'm': r[0]}
    return {'j': r[2], 'k': r[3], 'l': r[0], 'm': r[1]}


def _drop_zero_region(potential):
    """Apply the zero region: Li2(0*...) vanishes; zero elsewhere rejects the variant."""
    dilog_terms = []
    for coef, m in potential.dilog_terms:
        if m.zero > 0:
            continue
        if m.zero < 0:
            return None
        dilog_terms.append((coef, m))
    for _, m1, m2 in potential.loglog_terms:
        if m1.zero or m2.zero:
            return None
    return PotentialFunction(dilog_terms, potential.loglog_terms, potential.pi2_coef,
                             potential.variable_count, potential.names).collect()


def region_mapping(assignment):
    mapping = {region: index for region, index in assignment.region_index.items()}
    mapping[assignment.unit] = 'unit'
    mapping[assignment.unbounded] = 'zero'
    return mapping


def vertex_W(vertex, assignment, names=None):
    """
    Region potential of one vertex.

    Raises:
        VariantUnavailable: If every variant keeps the zero region in a log
    """
    regions = corner_regions(vertex)
    mapping = region_mapping(assignment)
    preferred = 1
    for letter, region in regions.items():
        if region == assignment.unbounded:
            preferred = VARIANT_AVOIDING[letter]
            break
    for f in [preferred] + [v for v in (1, 2, 3, 4) if v != preferred]:
        symbolic = crossing_function(vertex.sign, f, variable_count=0, names=[], **regions).collect()
        local = _drop_zero_region(symbolic.substitute(mapping, assignment.m, names))
        if local is not None:
            if f != preferred:
                logger.debug(f"Vertex {vertex.index} uses variant {f} instead of {preferred}")
            return local
    logger.error(f"No crossing-function variant fits vertex {vertex.index}")
    raise VariantUnavailable(f"zero region sits inside a log for every variant at vertex {vertex.index}")


def surviving_corners(vertex):
    """Corners whose horizontal edge survives: not beside I or J and not unbounded."""
    return [p for p in range(4) if p not in vertex.open_corners and p not in vertex.zero_corners]


def side_monomial(side, assignment):
    if side is None or side not in assignment.side_index:
        return Monomial.one()
    return Monomial.var(assignment.side_index[side])


def corner_ratio(vertex, corner, assignment):
    """Counterclockwise side ratio t = z(p+1)/z(p) at a corner."""
    ahead = side_monomial(vertex.sides[(corner + 1) % 4], assignment)
    behind = side_monomial(vertex.sides[corner], assignment)
    return ahead / behind


def corner_sign(corner):
    return 1 if corner % 2 == 1 else -1


def vertex_V(vertex, assignment, names=None):
    """Side potential of one vertex: sigma*(Li2(t^sigma) - pi^2/6) per surviving corner."""
    dilog_terms = []
    pi2 = Fraction(0)
    for p in surviving_corners(vertex):
        t = corner_ratio(vertex, p, assignment)
        if t.is_constant:
            logger.warning(f"Corner {p} of vertex {vertex.index} has constant ratio; skipped")
            continue
        sigma = corner_sign(p)
        dilog_terms.append((sigma, t ** sigma))
        pi2 -= Fraction(sigma, 6)
    return PotentialFunction(dilog_terms, [], pi2, assignment.g, names)


def build_V(graph, assignment):
    """
    Build the side potential V(z1..zg).

    Args:
        graph (TangleGraph): The reduced graph
        assignment (VariableAssignment): Variable numbering

    Returns:
        PotentialFunction: V, collected
    """
    names = [f"z{i + 1}" for i in range(assignment.g)]
    total = PotentialFunction([], [], 0, assignment.g, names)
    for vertex in graph.vertices:
        total = total + vertex_V(vertex, assignment, names)
    total = total.collect()
    logger.info(f"Built V with {len(total.dilog_terms)} dilog terms over {assignment.g} variables")
    return total


def build_W(graph, assignment):
    """
    Build the region potential W(w1..wm).

    Args:
        graph (TangleGraph): The reduced graph
        assignment (VariableAssignment): Variable numbering

    Returns:
        PotentialFunction: W, collected
    """
    names = [f"w{i + 1}" for i in range(assignment.m)]
    total = PotentialFunction([], [], 0, assignment.m, names)
    for vertex in graph.vertices:
        total = total + vertex_W(vertex, assignment, names)
    total = total.collect()
    logger.info(f"Built W with {len(total.dilog_terms)} dilog terms over {assignment.m} variables")
    return total


def vertex_potentials(graph, assignment):
    """Per-vertex pieces of V and W, keyed by crossing index."""
    z_names = [f"z{i + 1}" for i in range(assignment.g)]
    w_names = [f"w{i + 1}" for i in range(assignment.m)]
    return {
        vertex.index: {
            'V': vertex_V(vertex, assignment, z_names).collect(),
            'W': vertex_W(vertex, assignment, w_names),
        }
        for vertex in graph.vertices
    }
