"""
Variable Assignment
-------------------
This module numbers the complex variables of G: z-variables on contributing sides
and w-variables on bounded regions other than the unit region.
"""
import logging

from ..errors import InvalidRegion

# Configure logging
logger = logging.getLogger(__name__)


class VariableAssignment:
    """Side and region numbering for one reduced graph."""

    def __init__(self, side_index, region_index, unit, unbounded):
        """
        Initialize the assignment.

        Args:
            side_index (dict): Contributing side id -> z index (0-based)
            region_index (dict): Variable region id -> w index (0-based)
            unit (int): Region fixed to 1
            unbounded (int): Region fixed to 0
        """
        self.side_index = dict(side_index)
        self.region_index = dict(region_index)
        self.unit = unit
        self.unbounded = unbounded

    @property
    def g(self):
        return len(self.side_index)

    @property
    def m(self):
        return len(self.region_index)

    def side_value(self, side, z):
        """Value of a side at z; non-contributing and missing sides are 1."""
        if side is None or side not in self.side_index:
            return 1
        return z[self.side_index[side]]

    def region_value(self, region, w):
        if region == self.unbounded:
            return 0
        if region == self.unit:
            return 1
        return w[self.region_index[region]]

    def side_names(self):
        return {side: f"z{i + 1}" for side, i in self.side_index.items()}

    def region_names(self):
        names = {region: f"w{i + 1}" for region, i in self.region_index.items()}
        names[self.unit] = "1"
        names[self.unbounded] = "0"
        return names

    def to_dict(self):
        return {
            'sides': {str(k): v for k, v in self.side_index.items()},
            'regions': {str(k): v for k, v in self.region_index.items()},
            'unit': self.unit,
            'unbounded': self.unbounded,
        }

    def __str__(self):
        return f"VariableAssignment(g={self.g}, m={self.m}, unit region {self.unit})"


def assign_variables(graph, unit_region=None):
    """
    Number the variables of a reduced graph.

    Args:
        graph (TangleGraph): The reduced graph
        unit_region (int, optional): Region fixed to 1; defaults to the bounded
            region touching the most vertices

    Returns:
        VariableAssignment: Sides and regions in order of their smallest arc id

    Raises:
        InvalidRegion: If the unit region is unbounded or unknown
    """
    if unit_region is None:
        unit_region = graph.default_unit
    if unit_region is None or not 0 <= unit_region < len(graph.regions):
        raise InvalidRegion(f"region {unit_region} does not exist")
    if unit_region == graph.unbounded:
        raise InvalidRegion(f"region {unit_region} is unbounded")

    side_index = {}
    for side in sorted(graph.contributing_sides(), key=lambda s: min(s.arcs)):
        side_index[side.index] = len(side_index)
    region_index = {}
    for region in sorted(graph.bounded_regions(), key=lambda r: r.arcs):
        if region.index != unit_region:
            region_index[region.index] = len(region_index)

    assignment = VariableAssignment(side_index, region_index, unit_region, graph.unbounded)
    logger.info(f"Assigned {assignment}")
    return assignment
