"""
Solutions Module
----------------
This module provides the Solution and SolutionSet classes and classify, which
marks essential solutions, computes their volumes and picks the geometric one.
"""
import logging

import numpy as np

from ..config import EPS_SOLVE, ESSENTIAL_TOL, VOLUME_TIE_TOL
from ..errors import BranchPointError, NoConvergence, NotASolution
from ..numerics import bloch_wigner

# Configure logging
logger = logging.getLogger(__name__)


def _complex_pair(value):
    return None if value is None else [float(np.real(value)), float(np.imag(value))]


class Solution:
    """One solution vector of a hyperbolicity system."""

    def __init__(self, values, residual=0.0):
        """
        Initialize a solution.

        Args:
            values (array): Complex variable values
            residual (float): Max |shape product - 1| at the values
        """
        self.values = np.asarray(values, dtype=complex)
        self.residual = float(residual)
        self.essential = False
        self.shapes = None
        self.volume = None
        self.geometric = False
        self.positively_oriented = False
        self.flattened = None

    def distance(self, other):
        return float(np.max(np.abs(self.values - other.values)))

    def to_dict(self):
        return {
            'values': [_complex_pair(v) for v in self.values],
            'residual': self.residual,
            'essential': self.essential,
            'volume': self.volume,
            'geometric': self.geometric,
            'positively_oriented': self.positively_oriented,
            'flattened': _complex_pair(self.flattened),
        }

    def __str__(self):
        flags = "geometric" if self.geometric else "essential" if self.essential else "non-essential"
        volume = f"{self.volume:.6f}" if self.volume is not None else "-"
        return f"Solution(vol={volume}, {flags}, residual={self.residual:.2e})"


class SolutionSet:
    """Distinct solutions of one system."""

    def __init__(self, solutions=None):
        self.solutions = list(solutions or [])
        self.tied = []

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def __getitem__(self, index):
        return self.solutions[index]

    def essential(self):
        return [s for s in self.solutions if s.essential]

    @property
    def geometric_index(self):
        for i, s in enumerate(self.solutions):
            if s.geometric:
                return i
        return None

    @property
    def geometric(self):
        index = self.geometric_index
        return None if index is None else self.solutions[index]

    def to_dict(self):
        return {
            'solutions': [s.to_dict() for s in self.solutions],
            'geometric_index': self.geometric_index,
            'tied': list(self.tied),
        }

    def __str__(self):
        return f"SolutionSet({len(self.solutions)} solutions, {len(self.essential())} essential)"


def residual_of(equations, values):
    """Max |P_l(x) - 1| over shape-product equations."""
    if not equations:
        return 0.0
    return float(max(abs(eq.evaluate(values) - 1.0) for eq in equations))


def from_values(points, equations):
    return SolutionSet([Solution(p, residual_of(equations, p)) for p in points])


def _essential(shapes):
    shapes = np.asarray(shapes, dtype=complex)
    return bool(np.all(np.isfinite(shapes)) and np.all(np.abs(shapes) > ESSENTIAL_TOL)
                and np.all(np.abs(shapes - 1) > ESSENTIAL_TOL) and np.all(np.abs(shapes) < 1.0 / ESSENTIAL_TOL))


def classify(solutions, triangulation=None, potential=None, tol=EPS_SOLVE):
    """
    Set essential and geometric flags and volumes.

    Flattened values are computed with the tolerance raised to ten times the
    solution's own residual when that exceeds tol, so a solution accepted by the
    solver is never rejected by the flattening. Solutions other than the geometric
    one whose volume is within VOLUME_TIE_TOL of the maximum are listed in
    solutions.tied.

    Args:
        solutions (SolutionSet): Solutions to classify
        triangulation (Triangulation, optional): Supplies tetrahedron shapes and volumes
        potential (PotentialFunction, optional): Supplies flattened values; without a
            triangulation the volume is the imaginary part of the flattened value

    Returns:
        SolutionSet: The same set, annotated
    """
    for solution in solutions:
        try:
            if triangulation is not None:
                shapes = triangulation.evaluate_shapes(solution.values)
            else:
                shapes = solution.values
        except BranchPointError:
            continue
        solution.shapes = shapes
        solution.essential = _essential(shapes)
        if not solution.essential:
            continue
        solution.positively_oriented = bool(np.all(np.imag(shapes) > 0))
        if potential is not None:
            try:
                solution.flattened = potential.flattened(solution.values, tol=max(tol, solution.residual * 10))
            except (NotASolution, BranchPointError) as e:
                logger.warning(f"Flattening failed: {str(e)}")
        if triangulation is not None:
            solution.volume = float(sum(tet.orientation * bloch_wigner(u)
                                        for tet, u in zip(triangulation.tetrahedra, shapes)))
        elif solution.flattened is not None:
            solution.volume = float(np.imag(solution.flattened))

    candidates = [s for s in solutions if s.essential and s.volume is not None]
    if candidates:
        best = max(candidates, key=lambda s: s.volume)
        if best.volume > ESSENTIAL_TOL:
            best.geometric = True
            logger.info(f"Geometric solution: {best}")
            solutions.tied = [i for i, s in enumerate(solutions)
                              if s in candidates and s is not best and best.volume - s.volume <= VOLUME_TIE_TOL]
            if solutions.tied:
                logger.warning(f"Top volume {best.volume:.8f} is reached by {len(solutions.tied) + 1} solutions")
    else:
        logger.warning("No essential solution to classify")
    return solutions


def require_geometric(solutions):
    geometric = solutions.geometric
    if geometric is None:
        raise NoConvergence("no essential solution with positive volume", {"solutions": len(solutions)})
    return geometric
