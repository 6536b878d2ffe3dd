"""
Optimistic Limit Pipeline
-------------------------
This module runs the full computation for one knot diagram: parse, open into a
(1,1)-tangle, check assumptions, build both potentials and triangulations, solve
both hyperbolicity systems, pair the solutions and report the volume and
Chern-Simons value at the geometric solution together with the consistency checks.
"""
import logging
import math
import os
import time

import numpy as np

from . import __version__
from .config import (
    CONSISTENCY_TOL, DEFAULT_RNG_SEED, DEFAULT_SEEDS, DEFAULT_THREADS, EPS_SOLVE, SCHEMA_VERSION,
    SEED_ESCALATIONS, VOLUME_TIE_TOL,
)
from .diagram import assign_variables, auto_open, check_assumptions, load_pd, open_tangle, parse_pd
from .errors import (
    AssumptionViolation, BranchPointError, ConsistencyError, NoConvergence, NonEssentialImage,
    NonEssentialPoint, OptlimError, TriangulationError, VariantUnavailable,
)
from .identities.remaining import check_cancellation, theorem_residual, vertex_residuals
from .numerics import reduce_mod
from .potential import build_V, build_W, vertex_potentials
from .solver import (
    classify, convert_w_to_z, convert_z_to_w, from_values, region_seeds, require_geometric, residual_of,
    solve,
)
from .triangulation import build_thurston, build_yokota, verify_cusp, verify_edge_relations
from .utils.path_utils import get_fixture_path

# Configure logging
logger = logging.getLogger(__name__)

PI2 = math.pi ** 2


class Prepared:
    """Everything built from a diagram before solving."""

    def __init__(self, diagram, graph, assumptions, assignment, V, W, thurston, yokota):
        self.diagram = diagram
        self.graph = graph
        self.assumptions = assumptions
        self.assignment = assignment
        self.V = V
        self.W = W
        self.thurston = thurston
        self.yokota = yokota


class Report:
    """Result of one pipeline run."""

    def __init__(self, prepared, w_solutions, z_solutions, rng_seed):
        self.prepared = prepared
        self.w_solutions = w_solutions
        self.z_solutions = z_solutions
        self.rng_seed = rng_seed
        self.vol = None
        self.cs = None
        self.pairs = []
        self.checks = {}
        self.timings = {}

    @property
    def geometric(self):
        return self.w_solutions.geometric

    @property
    def complex_volume(self):
        return complex(self.vol, self.cs)

    def to_dict(self, include_timings=False):
        prepared = self.prepared
        data = {
            'schema': SCHEMA_VERSION,
            'version': __version__,
            'knot': prepared.diagram.name,
            'crossings': len(prepared.diagram.crossings),
            'split_side': prepared.graph.split_side,
            'unit_region': prepared.assignment.unit,
            'g': prepared.assignment.g,
            'm': prepared.assignment.m,
            'rng_seed': self.rng_seed,
            'solutions': self.w_solutions.to_dict(),
            'z_solutions': self.z_solutions.to_dict() if self.z_solutions is not None else None,
            'geometric_index': self.w_solutions.geometric_index,
            'vol': self.vol,
            'cs': self.cs,
            'positively_oriented': self.geometric.positively_oriented if self.geometric else None,
            'pairs': self.pairs,
            'checks': self.checks,
        }
        if include_timings:
            data['timings'] = self.timings
        return data

    def __str__(self):
        return f"Report({self.prepared.diagram.name}: vol={self.vol:.6f}, cs={self.cs:.6f})"


def load_diagram(knot=None, pd=None):
    """
    Diagram from a bundled fixture name or a PD file path.

    Raises:
        ParseError: If the file is missing or malformed
    """
    from .errors import ParseError

    if knot is not None:
        path = get_fixture_path(f"{knot}.pd")
        if path is None:
            raise ParseError(f"no bundled diagram named {knot}")
        diagram = load_pd(path)
    elif pd is not None:
        if not os.path.exists(pd):
            raise ParseError(f"PD file {pd} not found")
        diagram = load_pd(pd)
    else:
        raise ParseError("either a knot name or a PD file is required")
    return diagram


def _build(diagram, graph, unit_region):
    assumptions = check_assumptions(graph)
    if not assumptions.accepted:
        raise AssumptionViolation(f"split side {graph.split_side}: {assumptions}")
    assignment = assign_variables(graph, unit_region)
    V = build_V(graph, assignment)
    W = build_W(graph, assignment)
    thurston = build_thurston(graph, assignment)
    yokota = build_yokota(graph, assignment)
    return Prepared(diagram, graph, assumptions, assignment, V, W, thurston, yokota)


def prepare(diagram, open_side=None, unit_region=None):
    """
    Open the diagram and build potentials and triangulations.

    Args:
        diagram (KnotDiagram): Parsed diagram
        open_side (int, optional): Arc to split; every arc is tried in order when omitted
        unit_region (int, optional): Region fixed to 1

    Returns:
        Prepared: The built objects

    Raises:
        AssumptionViolation: If no split side gives an admissible construction
    """
    if open_side is not None:
        return _build(diagram, open_tangle(diagram, open_side), unit_region)

    reasons = []
    for arc in range(1, diagram.arc_count + 1):
        try:
            return _build(diagram, open_tangle(diagram, arc), unit_region)
        except (AssumptionViolation, VariantUnavailable, TriangulationError) as e:
            logger.warning(f"Split side {arc} rejected: {str(e)}")
            reasons.append(f"{arc}: {str(e)}")
    logger.error(f"No admissible split side for {diagram}")
    raise AssumptionViolation(f"no admissible split side ({'; '.join(reasons)})")


def _pair(prepared, w_solution):
    """Side solution induced by a region solution, with the checks linking them."""
    V, W, assignment, graph = prepared.V, prepared.W, prepared.assignment, prepared.graph
    row = {'w_index': None, 'status': 'ok'}
    try:
        z = convert_w_to_z(w_solution.values, graph, assignment)
    except (NonEssentialImage, ConsistencyError, BranchPointError) as e:
        row['status'] = f"no side solution: {str(e)}"
        return row, None
    try:
        row['z_residual'] = residual_of(V.hyperbolicity_equations(), z)
        row['theorem_residual'] = theorem_residual(V, W, z, w_solution.values)
        row['vertex_residual'] = max(vertex_residuals(graph, assignment, z, w_solution.values).values(),
                                     default=0.0)
        row['cancellation_residual'] = check_cancellation(graph, assignment, z, w_solution.values)
        back = convert_z_to_w(z, graph, assignment)
        row['round_trip'] = float(np.max(np.abs(back - w_solution.values))) if back.size else 0.0
    except (OptlimError, ZeroDivisionError) as e:
        row['status'] = f"check failed: {str(e)}"
    return row, z


def region_starts(prepared, z_solutions=None, rng_seed=DEFAULT_RNG_SEED):
    """Region-structured seeds followed by the region images of the essential side solutions."""
    starts = region_seeds(prepared.graph, prepared.assignment, rng_seed=rng_seed)
    if z_solutions is None:
        return starts
    for solution in z_solutions.essential():
        try:
            starts.append(convert_z_to_w(solution.values, prepared.graph, prepared.assignment))
        except (NonEssentialImage, ConsistencyError, BranchPointError) as e:
            logger.debug(f"Side solution has no region image: {str(e)}")
    return starts


def solve_regions(prepared, z_solutions=None, seeds=DEFAULT_SEEDS, rng_seed=DEFAULT_RNG_SEED,
                  tol=EPS_SOLVE, threads=DEFAULT_THREADS):
    """
    Solve and classify the region system.

    The seed count is doubled, up to SEED_ESCALATIONS times, while the top
    essential volume is reached by more than one solution.

    Raises:
        NoConvergence: If no seed converges or the top volume stays tied
    """
    equations = prepared.W.hyperbolicity_equations()
    starts = region_starts(prepared, z_solutions, rng_seed)
    for escalation in range(SEED_ESCALATIONS + 1):
        count = seeds * 2 ** escalation
        points = solve(equations, count, rng_seed + escalation, variable_count=prepared.assignment.m,
                       tol=tol, threads=threads, extra_starts=starts)
        w_solutions = classify(from_values(points, equations), prepared.thurston, prepared.W, tol)
        if not w_solutions.tied:
            return w_solutions
        logger.warning(f"Top volume tied with {count} seeds, retrying")
    raise NoConvergence(f"top volume reached by {len(w_solutions.tied) + 1} solutions",
                        {'seeds': count, 'tied': list(w_solutions.tied)})


def compute(diagram, open_side=None, unit_region=None, seeds=DEFAULT_SEEDS, rng_seed=DEFAULT_RNG_SEED,
            tol=EPS_SOLVE, threads=DEFAULT_THREADS, prepared=None):
    """
    Run the full pipeline on a diagram.

    Args:
        diagram (KnotDiagram): Parsed diagram
        open_side (int, optional): Arc to split
        unit_region (int, optional): Region fixed to 1
        seeds (int): Newton seeds per system
        rng_seed (int): Seed of the random generator
        tol (float): Solver residual threshold
        threads (int): Solver worker threads
        prepared (Prepared, optional): Reuse an earlier build

    Returns:
        Report: Solutions, invariants and checks

    Raises:
        AssumptionViolation: If the diagram cannot be opened admissibly
        NoConvergence: If no essential solution with positive volume is found or the top volume stays tied
        ConsistencyError: If the side and region solutions disagree
    """
    timings = {}
    start = time.perf_counter()
    if prepared is None:
        prepared = prepare(diagram, open_side, unit_region)
    timings['build'] = time.perf_counter() - start

    start = time.perf_counter()
    z_solutions = None
    try:
        z_points = solve(prepared.V.hyperbolicity_equations(), seeds, rng_seed,
                         variable_count=prepared.assignment.g, tol=tol, threads=threads)
        z_solutions = classify(from_values(z_points, prepared.V.hyperbolicity_equations()),
                               prepared.yokota, prepared.V, tol)
    except NoConvergence as e:
        logger.warning(f"Side system: {str(e)} {e.diagnostics}")
    w_solutions = solve_regions(prepared, z_solutions, seeds, rng_seed, tol, threads)
    timings['solve'] = time.perf_counter() - start

    geometric = require_geometric(w_solutions)
    report = Report(prepared, w_solutions, z_solutions, rng_seed)

    start = time.perf_counter()
    for index, solution in enumerate(w_solutions):
        if not solution.essential:
            continue
        row, _ = _pair(prepared, solution)
        row['w_index'] = index
        report.pairs.append(row)
    timings['pair'] = time.perf_counter() - start

    w0 = geometric.flattened
    if w0 is None:
        raise ConsistencyError("the geometric solution has no flattened value")
    report.vol = float(w0.imag)
    report.cs = float(reduce_mod(-w0.real, PI2))
    if report.cs <= -PI2 / 2:
        report.cs += PI2
    report.checks = _checks(prepared, report)
    report.timings = timings
    logger.info(f"Computed {report}")

    worst = max((row.get('theorem_residual', 0.0) for row in report.pairs), default=0.0)
    if worst > CONSISTENCY_TOL:
        logger.error(f"Side and region flattened values differ by {worst:.3e}")
        raise ConsistencyError(f"V0 and W0 differ by {worst:.3e} modulo 4*pi^2")
    return report


def _checks(prepared, report):
    geometric = report.geometric
    checks = {}
    try:
        edges = verify_edge_relations(prepared.thurston, geometric.values)
        checks['edge_relations'] = max((r['residual'] for r in edges['classes'] if not r['structural']),
                                       default=0.0)
        checks['edge_relations_all'] = edges['max_residual']
        cusp = verify_cusp(prepared.thurston, geometric.values)
        checks['cusp'] = cusp['residual']
        checks['cusp_structural'] = cusp['structural']
    except NonEssentialPoint as e:
        logger.warning(f"Geometric solution is not essential in the triangulation: {str(e)}")
    flattened = [s.flattened.imag for s in report.w_solutions.essential() if s.flattened is not None]
    checks['volume_maximal'] = all(v <= report.vol + 1e-9 for v in flattened)
    checks['volume_unique'] = all(geometric.volume - s.volume > VOLUME_TIE_TOL for s in report.w_solutions.essential()
                                  if s is not geometric and s.volume is not None)
    checks['volume_match'] = abs(geometric.volume - report.vol) if geometric.volume is not None else None
    ok_pairs = [row for row in report.pairs if row['status'] == 'ok']
    for key in ('z_residual', 'theorem_residual', 'vertex_residual', 'cancellation_residual', 'round_trip'):
        checks[key] = max((row[key] for row in ok_pairs), default=None)
    return checks


def potentials_of(prepared):
    return {'V': prepared.V.to_dict(), 'W': prepared.W.to_dict(),
            'vertices': {str(k): {'V': v['V'].to_dict(), 'W': v['W'].to_dict()}
                         for k, v in vertex_potentials(prepared.graph, prepared.assignment).items()}}


def triangulations_of(prepared):
    return {'thurston': prepared.thurston.to_dict(), 'yokota': prepared.yokota.to_dict()}
