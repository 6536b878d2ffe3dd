# optlim diagram package
from .pd import Crossing, KnotDiagram, parse_pd, load_pd
from .tangle import Side, Region, Vertex, TangleGraph, open_tangle, auto_open
from .assumptions import check_assumptions
from .variables import VariableAssignment, assign_variables

__all__ = [
    "Crossing", "KnotDiagram", "parse_pd", "load_pd",
    "Side", "Region", "Vertex", "TangleGraph", "open_tangle", "auto_open",
    "check_assumptions", "VariableAssignment", "assign_variables",
]
