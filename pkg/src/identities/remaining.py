"""
Remaining Terms
---------------
This module computes the per-crossing remaining term Z_n = V_n0 - W_n0, a bilinear
form in the logarithms of the side and region values at a crossing, the
per-crossing residual |V_n0 - W_n0 - Z_n| and the cancellation of all terms.
"""
import logging
import math

from ..errors import BranchPointError, DomainError
from ..numerics import clog, reduce_real_part
from ..potential.builder import vertex_potentials

# Configure logging
logger = logging.getLogger(__name__)

FOUR_PI2 = 4 * math.pi ** 2


def _log(value, what):
    try:
        return clog(complex(value))
    except DomainError:
        raise BranchPointError(f"log of {what} at zero")


def remaining_term(vertex, assignment, z, w):
    """
    Remaining term of one vertex.

    Each G-side at position p contributes (log w(corner p-1) - log w(corner p)) * log z;
    non-contributing sides and the I/J attachment contribute nothing.

    Args:
        vertex (Vertex): Kept crossing
        assignment (VariableAssignment): Variable numbering
        z (array): Side values
        w (array): Region values

    Returns:
        complex: Z_n
    """
    total = 0j
    for p, side in enumerate(vertex.sides):
        if side is None or side not in assignment.side_index:
            continue
        ahead = vertex.regions[p]
        behind = vertex.regions[(p - 1) % 4]
        log_z = _log(assignment.side_value(side, z), f"side {side}")
        log_ahead = _log(assignment.region_value(ahead, w), f"region {ahead}")
        log_behind = _log(assignment.region_value(behind, w), f"region {behind}")
        total += (log_behind - log_ahead) * log_z
    return total


def vertex_residuals(graph, assignment, z, w, pieces=None):
    """
    Per-vertex |V_n0 - W_n0 - Z_n| with the real part reduced mod 4*pi^2.

    Returns:
        dict: Crossing index -> residual
    """
    if pieces is None:
        pieces = vertex_potentials(graph, assignment)
    residuals = {}
    for vertex in graph.vertices:
        piece = pieces[vertex.index]
        difference = piece['V'].local_flattened(z) - piece['W'].local_flattened(w)
        difference -= remaining_term(vertex, assignment, z, w)
        residuals[vertex.index] = abs(reduce_real_part(difference, FOUR_PI2))
    return residuals


def check_cancellation(graph, assignment, z, w):
    """
    Residual of the cancellation of all remaining terms.

    The terms of the two ends of every side are opposite, so the sum vanishes for
    any z and w; vertex_residuals is the check that tells paired solutions apart.

    Args:
        graph (TangleGraph): The reduced graph
        assignment (VariableAssignment): Variable numbering
        z (array): Side solution
        w (array): Region solution paired with z

    Returns:
        float: |sum of Z_n| with the real part reduced mod 4*pi^2
    """
    total = sum(remaining_term(vertex, assignment, z, w) for vertex in graph.vertices)
    residual = abs(reduce_real_part(total, FOUR_PI2))
    logger.debug(f"Remaining terms sum to {total}, residual {residual:.3e}")
    return residual


def theorem_residual(V, W, z, w):
    """|V_0(z) - W_0(w)| with the real part reduced mod 4*pi^2, both sides flattened with snapped derivatives."""
    difference = V.flattened(z) - W.flattened(w)
    return abs(reduce_real_part(difference, FOUR_PI2))
