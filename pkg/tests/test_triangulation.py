import cmath
import math

import numpy as np
import pytest

from src.errors import CollapseError, DegenerateShape, NonEssentialPoint
from src.identities.lemma5 import random_sample
from src.numerics import bloch_wigner
from src.triangulation import (
    Octahedron, Triangulation, build_thurston, build_yokota, collapsed_move, compute_stretches,
    inverse_32, inverse_45, inverse_collapsed_move, move_32, move_45, verify_cusp, verify_edge_relations,
)
from src.triangulation.octahedron import tetrahedron_edges

REGULAR = cmath.exp(1j * math.pi / 3)
THIRD = cmath.exp(2j * math.pi / 3)


def test_move_45_calibration_point():
    us = move_45((1j, 1j, 1j, 1j))
    assert np.allclose(us, (1j, 1j, 1j, 1j, -1), atol=1e-15)


def test_move_32_calibration_point():
    us = move_32((THIRD, THIRD, THIRD))
    assert np.allclose(us, (REGULAR, REGULAR), atol=1e-15)


def test_u5_consistency():
    rng = np.random.default_rng(3)
    for _ in range(50):
        sample = random_sample(rng)
        u = sample.u
        assert abs(u[5] * u[1] * u[3] - 1) < 1e-10
        assert abs(u[5] * u[2] * u[4] - 1) < 1e-10


def test_move_45_preserves_volume_and_inverts():
    rng = np.random.default_rng(7)
    for _ in range(200):
        sample = random_sample(rng)
        ts = tuple(sample.t[i] for i in (1, 2, 3, 4))
        us = move_45(ts)
        assert abs(sum(map(bloch_wigner, ts)) - sum(map(bloch_wigner, us))) < 1e-12
        assert np.allclose(inverse_45(us), ts, rtol=1e-10)


@pytest.mark.parametrize("missing,index", [("AB", 3), ("BC", 4), ("CD", 1), ("DA", 2)])
def test_collapsed_moves(missing, index):
    names = {1: "CD", 2: "DA", 3: "AB", 4: "BC"}
    rng = np.random.default_rng(11)
    for _ in range(100):
        sample = random_sample(rng, missing=index)
        ts = {names[i]: v for i, v in sample.t.items()}
        us = collapsed_move(ts, missing)
        assert len(us) == 2
        assert abs(sum(map(bloch_wigner, ts.values())) - sum(map(bloch_wigner, us.values()))) < 1e-12
        back = inverse_collapsed_move(us, missing)
        for name, value in ts.items():
            assert back[name] == pytest.approx(value, rel=1e-9)


def test_inverse_32_round_trip():
    ts = (THIRD, THIRD, THIRD)
    assert np.allclose(inverse_32(move_32(ts)), ts, atol=1e-12)


def test_degenerate_input_rejected():
    with pytest.raises(DegenerateShape):
        move_45((1.0, 1j, 1j, -1j))
    with pytest.raises(ValueError):
        collapsed_move({"CD": 1j}, "XY")


def test_tetrahedron_edges_cover_all_pairs():
    edges = tetrahedron_edges("CFDB")
    assert len(edges) == 6
    assert {frozenset(pair) for pair, _ in edges} == {
        frozenset(p) for p in ("CF", "CD", "CB", "FD", "FB", "DB")}
    assert sorted(kind for _, kind in edges) == [0, 0, 1, 1, 2, 2]


def test_figure_eight_octahedra(figure_eight_graph):
    survivors = {v.index: Octahedron(v).thurston_survivors() for v in figure_eight_graph.vertices}
    assert survivors == {1: ['BCDF'], 2: ['ACDE']}


def test_figure_eight_stretches_skip_open_arcs(figure_eight_graph):
    up, down = compute_stretches(figure_eight_graph)
    assert set(up) == set(down) == {4, 5, 6, 7, 8}


def test_figure_eight_thurston(figure_eight_graph, figure_eight_assignment):
    t = build_thurston(figure_eight_graph, figure_eight_assignment)
    assert [tet.name for tet in t.tetrahedra] == ['BCDF', 'ACDE']
    assert len(t.edge_classes) == 2
    assert sum(len(c.members) for c in t.edge_classes) == 12
    assert [c.tag for c in t.edge_classes].count('A') >= 1


def test_figure_eight_thurston_at_geometric_point(figure_eight_graph, figure_eight_assignment):
    t = build_thurston(figure_eight_graph, figure_eight_assignment)
    shapes = t.evaluate_shapes([REGULAR])
    assert t.volume(shapes) == pytest.approx(2.029883212819307, abs=1e-12)
    edges = verify_edge_relations(t, [REGULAR])
    assert edges['max_residual'] < 1e-12
    cusp = verify_cusp(t, [REGULAR])
    assert cusp['residual'] is not None
    assert cusp['residual'] < 1e-12
    assert cusp['structural']
    assert all(row['structural'] for row in cusp['meridians'])


def test_figure_eight_cusp_holds_away_from_solutions(figure_eight_graph, figure_eight_assignment):
    t = build_thurston(figure_eight_graph, figure_eight_assignment)
    for w in (0.3 + 1.7j, -2.2 + 0.4j):
        cusp = verify_cusp(t, [w])
        assert cusp['structural']
        assert cusp['residual'] < 1e-12


def test_region_equation_matches_edge_class(figure_eight_graph, figure_eight_assignment):
    from src.potential import build_W

    W = build_W(figure_eight_graph, figure_eight_assignment)
    t = build_thurston(figure_eight_graph, figure_eight_assignment)
    rng = np.random.default_rng(5)
    for region, index in figure_eight_assignment.region_index.items():
        edge_class = t.class_of_region(region)
        assert edge_class is not None
        assert edge_class.tag == 'A'
        for _ in range(100):
            x = rng.uniform(0.3, 3.0) * np.exp(1j * rng.uniform(-math.pi, math.pi, 1))
            lhs = W.shape_product_form(index).evaluate(x)
            rhs = edge_class.product(t.evaluate_shapes(x))
            assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_figure_eight_yokota(figure_eight_graph, figure_eight_assignment):
    t = build_yokota(figure_eight_graph, figure_eight_assignment)
    assert len(t.tetrahedra) == 2
    shapes = t.evaluate_shapes([REGULAR])
    assert abs(t.volume(shapes)) == pytest.approx(2.029883212819307, abs=1e-12)


def test_non_essential_point_rejected(figure_eight_graph, figure_eight_assignment):
    t = build_thurston(figure_eight_graph, figure_eight_assignment)
    with pytest.raises(NonEssentialPoint):
        verify_edge_relations(t, shapes=np.array([1.0 + 0j, REGULAR]))


def test_triangulation_dict_round_trip(figure_eight_graph, figure_eight_assignment):
    t = build_thurston(figure_eight_graph, figure_eight_assignment)
    again = Triangulation.from_dict(t.to_dict())
    assert again.to_dict() == t.to_dict()
    assert np.allclose(again.evaluate_shapes([REGULAR]), t.evaluate_shapes([REGULAR]))


def test_full_vertex_with_two_zero_corners_collapses():
    class FakeCrossing:
        over_in = 3
        index = 0

        def letter_position(self, letter):
            return (self.over_in + "ABCD".index(letter)) % 4

    class FakeVertex:
        crossing = FakeCrossing()
        index = 0
        role = 'full'
        zero_corners = (0, 1)
        open_corners = ()

    with pytest.raises(CollapseError):
        Octahedron(FakeVertex())
