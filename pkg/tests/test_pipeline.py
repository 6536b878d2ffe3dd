import json
import math

import pytest

from src.config import SEED_ESCALATIONS
from src.errors import AssumptionViolation, NoConvergence, ParseError
from src.pipeline import (
    compute, load_diagram, potentials_of, prepare, region_starts, solve_regions, triangulations_of,
)

FIGURE_EIGHT_VOLUME = 2.029883212819307
FIVE_TWO_VOLUME = 2.8281
FIVE_TWO_CS = 3.0241


def test_load_diagram_errors(tmp_path):
    with pytest.raises(ParseError):
        load_diagram(knot="not_a_knot")
    with pytest.raises(ParseError):
        load_diagram(pd=str(tmp_path / "missing.pd"))
    with pytest.raises(ParseError):
        load_diagram()


def test_load_diagram_from_file(tmp_path):
    path = tmp_path / "figure_eight.pd"
    path.write_text("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)\n")
    diagram = load_diagram(pd=str(path))
    assert len(diagram.crossings) == 4


def test_prepare_figure_eight(figure_eight_prepared):
    p = figure_eight_prepared
    assert p.graph.split_side == 2
    assert p.assignment.g == 1
    assert p.assignment.m == 1
    assert p.W.variable_count == 1
    assert p.V.variable_count == 1
    assert len(p.thurston.tetrahedra) == 2


def test_figure_eight_invariants(figure_eight_report):
    r = figure_eight_report
    assert r.vol == pytest.approx(FIGURE_EIGHT_VOLUME, abs=1e-6)
    assert abs(r.cs) < 1e-6
    assert r.geometric.volume == pytest.approx(FIGURE_EIGHT_VOLUME, abs=1e-9)
    assert r.complex_volume == pytest.approx(complex(r.vol, r.cs))
    assert "vol=2.029883" in str(r)


def test_figure_eight_checks(figure_eight_report):
    checks = figure_eight_report.checks
    assert checks['edge_relations'] < 1e-9
    assert checks['cusp'] < 1e-9
    assert checks['cusp_structural']
    assert checks['volume_maximal']
    assert checks['volume_unique']
    assert checks['volume_match'] < 1e-9
    assert checks['theorem_residual'] < 1e-8
    assert checks['vertex_residual'] < 1e-8
    assert checks['cancellation_residual'] < 1e-9
    assert checks['round_trip'] < 1e-6


def test_figure_eight_pairs(figure_eight_report):
    ok = [row for row in figure_eight_report.pairs if row['status'] == 'ok']
    assert len(ok) == 2
    for row in ok:
        assert row['z_residual'] < 1e-8


def test_figure_eight_report_dict(figure_eight_report):
    data = figure_eight_report.to_dict()
    assert data['schema'] == 1
    assert data['knot'] == "4_1"
    assert data['split_side'] == 2
    assert 'timings' not in data
    assert data['geometric_index'] is not None
    assert data['positively_oriented'] in (True, False)
    assert 'timings' in figure_eight_report.to_dict(include_timings=True)


def test_reports_are_reproducible(figure_eight, figure_eight_prepared, figure_eight_report):
    again = compute(figure_eight, seeds=60, rng_seed=0, prepared=figure_eight_prepared)
    assert (json.dumps(again.to_dict(), sort_keys=True)
            == json.dumps(figure_eight_report.to_dict(), sort_keys=True))


def test_dumps(figure_eight_prepared):
    potentials = potentials_of(figure_eight_prepared)
    assert set(potentials) == {'V', 'W', 'vertices'}
    triangulations = triangulations_of(figure_eight_prepared)
    assert len(triangulations['thurston']['tetrahedra']) == 2
    json.dumps(potentials)
    json.dumps(triangulations)


def test_trefoil_is_rejected():
    with pytest.raises(AssumptionViolation) as info:
        compute(load_diagram(knot="3_1"), seeds=10)
    assert info.value.exit_code == 3


@pytest.mark.timeout(300)
def test_five_two_invariants(five_two_report):
    r = five_two_report
    assert r.vol == pytest.approx(FIVE_TWO_VOLUME, abs=1e-3)
    # the diagram may be the mirror image
    assert abs(r.cs) == pytest.approx(FIVE_TWO_CS, abs=1e-3)
    assert -math.pi ** 2 / 2 < r.cs <= math.pi ** 2 / 2
    assert r.checks['volume_maximal']
    assert r.checks['theorem_residual'] < 1e-8


@pytest.mark.timeout(900)
@pytest.mark.parametrize("knot, volume", [
    ("6_1", 3.163963),
    ("6_2", 4.400833),
    ("6_3", 5.693021),
])
def test_six_crossing_knots(knot, volume):
    r = compute(load_diagram(knot=knot), seeds=200, rng_seed=0)
    assert r.vol == pytest.approx(volume, abs=1e-6)
    assert r.geometric.volume == pytest.approx(volume, abs=1e-6)
    assert r.w_solutions.tied == []
    assert r.checks['volume_maximal']
    assert r.checks['volume_unique']
    assert r.checks['edge_relations'] < 1e-9
    assert r.checks['theorem_residual'] < 1e-8
    assert r.checks['vertex_residual'] < 1e-8
    if knot == "6_3":
        # amphichiral
        assert abs(r.cs) < 1e-6


def test_region_starts_include_side_images(figure_eight_prepared, figure_eight_report):
    plain = region_starts(figure_eight_prepared, rng_seed=0)
    starts = region_starts(figure_eight_prepared, figure_eight_report.z_solutions, rng_seed=0)
    assert len(starts) == len(plain) + len(figure_eight_report.z_solutions.essential())
    geometric = figure_eight_report.geometric.values
    assert min(abs(w - geometric).max() for w in starts[len(plain):]) < 1e-8


def test_tied_top_volume_escalates_then_raises(figure_eight_prepared, monkeypatch):
    calls = []

    def always_tied(solutions, *args, **kwargs):
        calls.append(len(solutions))
        solutions.tied = [0]
        return solutions

    monkeypatch.setattr("src.pipeline.classify", always_tied)
    with pytest.raises(NoConvergence) as info:
        solve_regions(figure_eight_prepared, None, seeds=10, rng_seed=0)
    assert len(calls) == SEED_ESCALATIONS + 1
    assert info.value.diagnostics['seeds'] == 10 * 2 ** SEED_ESCALATIONS
    assert info.value.diagnostics['tied'] == [0]
    assert "top volume" in str(info.value)


def test_unused_helpers_are_gone():
    from src import pipeline
    from src.diagram.pd import Crossing
    from src.diagram.tangle import TangleGraph
    from src.potential.function import PotentialFunction
    from src.potential.monomial import Monomial
    from src.triangulation import Octahedron
    from src.utils import path_utils

    assert not hasattr(Crossing, 'is_over')
    assert not hasattr(Octahedron, 'is_over')
    assert not hasattr(TangleGraph, 'region_kind')
    assert not hasattr(Monomial, 'evaluate_many')
    assert not hasattr(PotentialFunction, 'gradient')
    assert not hasattr(pipeline, 'compute_knot')
    assert not hasattr(path_utils, 'get_app_root_dir')
