"""
Assumption Checks
-----------------
This module provides check_assumptions, which inspects a reduced graph G for the
local patterns that rule out the octahedral construction: reducible crossings,
composite diagrams and vertices where more than one horizontal edge collapses.
"""
import logging

# Configure logging
logger = logging.getLogger(__name__)


class AssumptionReport:
    """Violations found in a reduced graph; empty means accepted."""

    def __init__(self, violations=None, notes=None):
        self.violations = list(violations or [])
        self.notes = list(notes or [])

    @property
    def accepted(self):
        return not self.violations

    def add(self, kind, vertex, detail):
        self.violations.append({'kind': kind, 'vertex': vertex, 'detail': detail})

    def kinds(self):
        return sorted({v['kind'] for v in self.violations})

    def to_dict(self):
        return {'accepted': self.accepted, 'violations': self.violations, 'notes': self.notes}

    def __str__(self):
        if self.accepted:
            return "accepted"
        return ", ".join(f"{v['kind']} at {v['vertex']}: {v['detail']}" for v in self.violations)


def _check_full_vertex(vertex, report):
    zeros = vertex.zero_corners
    if len(zeros) >= 2:
        adjacent = any((b - a) % 4 in (1, 3) for a in zeros for b in zeros if a != b)
        kind = "composite" if adjacent else "reducible"
        report.add(kind, vertex.index, f"collapsed corners {list(vertex.collapsed_horizontal)}")
        report.add("two-horizontal-edge collapse", vertex.index,
                   f"{len(zeros)} corners lie in the unbounded region")
        return
    if len(set(vertex.regions)) < 4:
        report.add("reducible", vertex.index, f"region repeated at corners {list(vertex.regions)}")


def _check_endpoint(vertex, report, unbounded):
    merged = vertex.open_corners
    merged_region = vertex.regions[merged[0]]
    if vertex.regions[merged[1]] != merged_region:
        report.add("reducible", vertex.index, "corners beside the open end lie in different regions")
        return
    if merged_region == unbounded:
        report.add("two-horizontal-edge collapse", vertex.index,
                   "the merged corner at the open end lies in the unbounded region")
        return
    others = [vertex.regions[p] for p in range(4) if p not in merged]
    if others.count(unbounded) >= 2:
        report.add("two-horizontal-edge collapse", vertex.index,
                   "both remaining corners lie in the unbounded region")
    elif len(set(others + [merged_region])) < 3:
        report.add("reducible", vertex.index, f"region repeated at corners {list(vertex.regions)}")


def check_assumptions(graph):
    """
    Inspect a reduced graph for the patterns the construction excludes.

    Args:
        graph (TangleGraph): The reduced graph

    Returns:
        AssumptionReport: Violations found; an empty report accepts the diagram
    """
    report = AssumptionReport()

    if graph.i_endpoint == graph.j_endpoint:
        report.add("coincident endpoints", graph.i_endpoint, "I and J end at the same crossing")

    for vertex in graph.vertices:
        if len(set(vertex.crossing.arcs)) < 4:
            report.add("reducible", vertex.index, "crossing is a kink")
            continue
        if vertex.role == 'full':
            _check_full_vertex(vertex, report)
        else:
            _check_endpoint(vertex, report, graph.unbounded)

    for side in graph.sides:
        if side.left == side.right:
            report.add("reducible", side.tail[0], f"side {side.index} has the same region on both banks")

    if graph.euler_characteristic() != 2:
        report.add("non-planar", None, f"Euler characteristic {graph.euler_characteristic()}")

    trivalent = sum(1 for v in graph.vertices if v.valence == 3)
    if trivalent != 2:
        report.add("coincident endpoints", None, f"{trivalent} trivalent vertices")

    if len(graph.bounded_regions()) < 2:
        report.add("degenerate", None, "fewer than two bounded regions")

    if report.accepted:
        report.notes.append("local patterns only; global hyperbolicity is not certified")
        logger.info(f"Split side {graph.split_side} accepted")
    else:
        logger.warning(f"Split side {graph.split_side}: {report}")
    return report
