import cmath
import math
import time

import numpy as np
import pytest

from src.errors import NoConvergence, NonEssentialImage
from src.potential import build_W
from src.solver import (
    FunctionSystem, ShapeSystem, Solution, SolutionSet, classify, convert_w_to_z, convert_z_to_w, deduplicate,
    from_values, newton, region_seeds, require_geometric, residual_of, solve, thurston_from_yokota,
    yokota_from_thurston,
)
from src.triangulation import Octahedron
from src.utils.dump_manager import load_potentials
from src.utils.path_utils import get_fixture_path

REGULAR = cmath.exp(1j * math.pi / 3)


def cubic(x):
    z = x[0]
    return np.array([z ** 3 - 3 * z ** 2 + 2 * z - 1])


class FullCrossing:
    over_in = 3
    index = 0

    def letter_position(self, letter):
        return (self.over_in + "ABCD".index(letter)) % 4


class FullVertex:
    crossing = FullCrossing()
    index = 0
    role = 'full'
    zero_corners = ()
    open_corners = ()

    def corner_name(self, corner):
        return ("AB", "BC", "CD", "DA")[(corner - self.crossing.over_in) % 4]


def test_newton_single_seed():
    x, norm, status = newton(FunctionSystem(cubic, 1), [0.3 - 0.5j])
    assert status == 'converged'
    assert norm < 1e-10
    assert abs(cubic(x)[0]) < 1e-10


def test_solve_finds_all_cubic_roots():
    found = solve(cubic, seeds=60, rng_seed=1, variable_count=1)
    roots = np.roots([1, -3, 2, -1])
    assert len(found) == 3
    for root in roots:
        assert min(abs(x[0] - root) for x in found) < 1e-8


def test_solve_is_deterministic():
    a = solve(cubic, seeds=30, rng_seed=4, variable_count=1)
    b = solve(cubic, seeds=30, rng_seed=4, variable_count=1, threads=3)
    assert len(a) == len(b)
    for x, y in zip(a, b):
        assert np.allclose(x, y, atol=1e-12)


def test_inconsistent_system_raises():
    with pytest.raises(NoConvergence) as info:
        solve(lambda x: np.array([1.0 + 0 * x[0]]), seeds=5, rng_seed=0, variable_count=1)
    assert info.value.diagnostics['seeds'] == 5
    assert info.value.exit_code == 4


def test_deduplicate():
    points = [np.array([1.0 + 0j]), np.array([1.0 + 1e-9j]), np.array([2.0 + 0j])]
    assert len(deduplicate(points)) == 2


def kashaev_potential():
    return load_potentials(get_fixture_path("5_2_kashaev.json"))['potential']


@pytest.mark.timeout(30)
def test_kashaev_geometric_solution():
    f = kashaev_potential()
    equations = f.hyperbolicity_equations()
    start = time.perf_counter()
    points = solve(equations, seeds=60, rng_seed=0, variable_count=2)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    solutions = classify(from_values(points, equations), potential=f)
    best = require_geometric(solutions)
    z = best.values[0]
    assert abs(z ** 3 - 3 * z ** 2 + 2 * z - 1) < 1e-8
    assert best.values[0] == pytest.approx(0.3376 - 0.5623j, abs=1e-4)
    assert best.values[1] == pytest.approx(0.1226 + 0.7449j, abs=1e-4)
    assert best.flattened.real == pytest.approx(3.0241, abs=1e-4)
    assert best.flattened.imag == pytest.approx(2.8281, abs=1e-4)
    assert best.volume == pytest.approx(2.8281, abs=1e-3)
    assert best.residual < 1e-9
    assert sum(s.geometric for s in solutions) == 1
    assert solutions.tied == []


def test_kashaev_solutions_come_in_conjugate_pairs():
    equations = kashaev_potential().hyperbolicity_equations()
    points = solve(equations, seeds=40, rng_seed=3, variable_count=2)
    for x in points:
        assert min(np.max(np.abs(np.conj(x) - y)) for y in points) < 1e-6
    volumes = sorted(s.volume for s in classify(from_values(points, equations), potential=kashaev_potential())
                     if s.volume is not None)
    assert volumes[0] == pytest.approx(-volumes[-1], abs=1e-6)


def test_shape_system_matches_equations():
    equations = kashaev_potential().hyperbolicity_equations()
    system = ShapeSystem(equations, 2)
    x = np.array([0.7 - 0.4j, 1.3 + 0.9j])
    residual = system.residual(x)
    for value, eq in zip(residual, equations):
        assert value == pytest.approx(eq.evaluate(x) - 1.0, abs=1e-12)
    numeric = FunctionSystem(system.residual, 2, step=1e-7).jacobian(x)
    assert np.allclose(system.jacobian(x), numeric, rtol=1e-5, atol=1e-5)


def test_flattening_accepts_solver_residual():
    f = kashaev_potential()
    equations = f.hyperbolicity_equations()
    best = require_geometric(classify(from_values(solve(equations, seeds=40, rng_seed=0, variable_count=2),
                                                  equations), potential=f))
    nudged = best.values * (1 + 1e-9)
    solution = Solution(nudged, residual_of(equations, nudged))
    assert solution.residual > 1e-12
    classify(SolutionSet([solution]), potential=f, tol=1e-12)
    assert solution.flattened is not None
    assert solution.flattened.imag == pytest.approx(best.flattened.imag, abs=1e-6)


class FlatTriangulation:
    """One tetrahedron per variable with the variable as its shape."""

    def __init__(self, count):
        self.tetrahedra = [type("Tet", (), {'orientation': 1})() for _ in range(count)]

    def evaluate_shapes(self, point):
        return np.asarray(point, dtype=complex)


def test_classify_flags_tied_top_volume():
    # D(z) = D(1/(1-z))
    solutions = SolutionSet([Solution([2j]), Solution([1 / (1 - 2j)]), Solution([0.5 + 0.1j])])
    classify(solutions, FlatTriangulation(1))
    assert solutions[0].volume == pytest.approx(solutions[1].volume, abs=1e-12)
    assert sum(s.geometric for s in solutions) == 1
    assert len(solutions.tied) == 1
    assert solutions.tied[0] in (0, 1)
    assert not solutions[solutions.tied[0]].geometric
    assert solutions.to_dict()['tied'] == solutions.tied


def test_classify_without_tie():
    solutions = SolutionSet([Solution([REGULAR]), Solution([0.5 + 0.1j])])
    classify(solutions, FlatTriangulation(1))
    assert solutions[0].geometric
    assert solutions.tied == []


def test_region_seeds_reach_figure_eight_solution(figure_eight_graph, figure_eight_assignment):
    W = build_W(figure_eight_graph, figure_eight_assignment)
    equations = W.hyperbolicity_equations()
    seeds = region_seeds(figure_eight_graph, figure_eight_assignment, count=4, rng_seed=1)
    assert len(seeds) == 10
    assert all(len(w) == figure_eight_assignment.m for w in seeds)
    assert min(residual_of(equations, w) for w in seeds[:6]) < 1e-9
    again = region_seeds(figure_eight_graph, figure_eight_assignment, count=4, rng_seed=1)
    assert all(np.allclose(a, b) for a, b in zip(seeds, again))


def test_converted_side_solution_seeds_region_solve(figure_eight_graph, figure_eight_assignment):
    W = build_W(figure_eight_graph, figure_eight_assignment)
    w = convert_z_to_w(np.array([REGULAR]), figure_eight_graph, figure_eight_assignment)
    points = solve(W.hyperbolicity_equations(), seeds=1, rng_seed=0, variable_count=1, extra_starts=[w])
    assert min(np.max(np.abs(x - w)) for x in points) < 1e-8


def test_require_geometric_without_candidates():
    solutions = SolutionSet([Solution([1.0 + 0j])])
    classify(solutions)
    assert not solutions[0].essential
    with pytest.raises(NoConvergence):
        require_geometric(solutions)


def test_solution_to_dict():
    s = Solution([REGULAR], residual=1e-13)
    data = s.to_dict()
    assert data['values'][0] == pytest.approx([0.5, math.sqrt(3) / 2])
    assert data['flattened'] is None
    assert "non-essential" in str(s)


def test_full_octahedron_transport():
    octahedron = Octahedron(FullVertex())
    t = {name: 1j for name in ("AB", "BC", "CD", "DA")}
    u = thurston_from_yokota(octahedron, t)
    assert set(u) == {'BCDF', 'ACDE', 'ABDF', 'ABCE', 'ABCD'}
    for name in ('BCDF', 'ACDE', 'ABDF', 'ABCE'):
        assert u[name] == pytest.approx(1j, abs=1e-14)
    assert u['ABCD'] == pytest.approx(-1, abs=1e-14)
    back = yokota_from_thurston(octahedron, u)
    for name, value in t.items():
        assert back[name] == pytest.approx(value, abs=1e-12)


def test_full_octahedron_degenerate_input():
    octahedron = Octahedron(FullVertex())
    with pytest.raises(NonEssentialImage):
        thurston_from_yokota(octahedron, {"AB": 1.0, "BC": 1j, "CD": 1j, "DA": -1j})


def test_figure_eight_conversion(figure_eight_graph, figure_eight_assignment):
    W = build_W(figure_eight_graph, figure_eight_assignment)
    z = np.array([REGULAR])
    w = convert_z_to_w(z, figure_eight_graph, figure_eight_assignment)
    assert len(w) == figure_eight_assignment.m
    assert abs(W.shape_product_form(0).evaluate(w) - 1) < 1e-10
    assert np.allclose(convert_w_to_z(w, figure_eight_graph, figure_eight_assignment), z, atol=1e-10)


def test_figure_eight_conversion_rejects_degenerate_point(figure_eight_graph, figure_eight_assignment):
    with pytest.raises(NonEssentialImage):
        convert_z_to_w(np.array([1.0 + 0j]), figure_eight_graph, figure_eight_assignment)
