import pytest

from src.diagram import (
    assign_variables, auto_open, check_assumptions, load_pd, open_tangle, parse_pd,
)
from src.diagram.pd import Crossing
from src.diagram.tangle import Vertex
from src.errors import AssumptionViolation, InvalidRegion, ParseError, ValidationError
from src.utils.path_utils import get_fixture_path, list_fixtures

FIGURE_EIGHT = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"
# figure eight with a kink on arc 8
KINKED_FIGURE_EIGHT = "X(4,2,5,1) X(10,6,1,5) X(6,3,7,4) X(2,7,3,8) X(8,9,9,10)"


def test_parse_header_and_comments():
    d = parse_pd("# comment\nknot 4_1\n" + FIGURE_EIGHT + "  # trailing\n")
    assert d.name == "4_1"
    assert len(d.crossings) == 4
    assert d.arc_count == 8


def test_signs_of_figure_eight():
    d = parse_pd(FIGURE_EIGHT)
    assert [c.sign for c in d.crossings] == [1, 1, -1, -1]
    assert sum(c.sign for c in d.crossings) == 0


def test_faces_are_planar():
    d = parse_pd(FIGURE_EIGHT)
    assert len(d.faces) == len(d.crossings) + 2


def test_left_and_right_faces_differ():
    d = parse_pd(FIGURE_EIGHT)
    for arc in range(1, d.arc_count + 1):
        assert d.left_face(arc) != d.right_face(arc)


def test_successor_and_predecessor():
    d = parse_pd(FIGURE_EIGHT)
    for arc in range(1, d.arc_count + 1):
        assert d.predecessor(d.successor(arc)) == arc


def test_serialize_reparses_to_same_crossings():
    d = parse_pd("knot 4_1\n" + FIGURE_EIGHT)
    again = parse_pd(d.serialize())
    assert [c.arcs for c in again.crossings] == [c.arcs for c in d.crossings]
    assert again.name == "4_1"


@pytest.mark.parametrize("text", ["", "   # only a comment", "X(1,2,3)", "Y(1,2,3,4)", "X(4,2,5,1) junk"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_pd(text)


@pytest.mark.parametrize("text", [
    "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3) X(1,2,3,4)",
    "X(1,4,2,5) X(3,6,4,1) X(5,2,7,3)",
    "X(1,4,2,5) X(3,6,5,1) X(4,2,6,3)",
])
def test_validation_errors(text):
    with pytest.raises(ValidationError):
        parse_pd(text)


def test_kink_rejected_unless_allowed():
    text = "X(1,1,2,2)"
    with pytest.raises(ValidationError):
        parse_pd(text)


def test_fixtures_are_listed():
    names = list_fixtures()
    for name in ("3_1", "4_1", "5_2", "6_1", "6_2", "6_3"):
        assert name in names


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2", "6_1", "6_2", "6_3"])
def test_fixtures_parse(name):
    d = load_pd(get_fixture_path(f"{name}.pd"))
    assert d.name == name
    assert len(d.faces) == len(d.crossings) + 2


def test_open_figure_eight(figure_eight_graph):
    g = figure_eight_graph
    assert g.split_side == 2
    assert list(g.i_arcs) == [2, 1]
    assert list(g.j_arcs) == [2, 3]
    assert g.removed == frozenset({0, 3})
    assert g.i_endpoint == 1
    assert g.j_endpoint == 2
    assert [list(s.arcs) for s in g.sides] == [[4, 5], [6], [7, 8]]
    assert [s.contributing for s in g.sides] == [False, True, False]
    assert len(g.regions) == 3
    assert g.euler_characteristic() == 2


def test_figure_eight_vertex_roles(figure_eight_graph):
    roles = {v.index: v.role for v in figure_eight_graph.vertices}
    assert roles == {1: 'i', 2: 'j'}
    for vertex in figure_eight_graph.vertices:
        assert vertex.valence == 3
        assert vertex.open_position is not None


def test_figure_eight_accepted(figure_eight_graph):
    report = check_assumptions(figure_eight_graph)
    assert report.accepted, str(report)
    assert report.to_dict()['accepted']


def test_figure_eight_variables(figure_eight_graph, figure_eight_assignment):
    a = figure_eight_assignment
    assert a.g == 1
    assert a.m == 1
    assert a.unbounded == figure_eight_graph.unbounded
    assert a.unit != a.unbounded
    assert a.region_value(a.unbounded, [0.5]) == 0
    assert a.region_value(a.unit, [0.5]) == 1
    assert a.side_value(None, [0.5]) == 1


def test_unit_region_must_be_bounded(figure_eight_graph):
    with pytest.raises(InvalidRegion):
        assign_variables(figure_eight_graph, figure_eight_graph.unbounded)
    with pytest.raises(InvalidRegion):
        assign_variables(figure_eight_graph, 99)


def test_unknown_split_side(figure_eight):
    with pytest.raises(AssumptionViolation):
        open_tangle(figure_eight, 42)


def test_auto_open_figure_eight(figure_eight):
    graph = auto_open(figure_eight)
    assert check_assumptions(graph).accepted
    assert len(graph.contributing_sides()) >= 1


def test_trefoil_has_no_admissible_split():
    trefoil = load_pd(get_fixture_path("3_1.pd"))
    with pytest.raises(AssumptionViolation):
        auto_open(trefoil)


class StubGraph:
    """Reduced graph holding only full vertices around region 0 as the unbounded region."""

    unbounded = 0
    i_endpoint = None
    j_endpoint = -1
    sides = ()
    split_side = None

    def __init__(self, *corner_regions):
        self.vertices = [Vertex(Crossing(index, (1, 2, 3, 4), 3), 'full', regions, (0, 1, 2, 3), 0)
                         for index, regions in enumerate(corner_regions)]

    def euler_characteristic(self):
        return 2

    def bounded_regions(self):
        return [1, 2, 3]


def test_adjacent_collapsed_corners_are_composite():
    report = check_assumptions(StubGraph((0, 0, 1, 2)))
    assert not report.accepted
    assert "composite" in report.kinds()
    assert "reducible" not in report.kinds()
    assert "two-horizontal-edge collapse" in report.kinds()


def test_opposite_collapsed_corners_are_reducible():
    report = check_assumptions(StubGraph((0, 1, 0, 2)))
    assert "reducible" in report.kinds()
    assert "composite" not in report.kinds()


def test_repeated_corner_region_is_reducible():
    report = check_assumptions(StubGraph((1, 2, 1, 3)))
    assert report.kinds() == ["coincident endpoints", "reducible"]
    assert any("region repeated" in v['detail'] for v in report.violations)


def test_allowed_kink_is_reported_reducible():
    with pytest.raises(ValidationError):
        parse_pd(KINKED_FIGURE_EIGHT)
    d = parse_pd(KINKED_FIGURE_EIGHT, allow_kinks=True)
    assert len(d.crossings) == 5
    assert len(d.faces) == 7
    graph = open_tangle(d, 2)
    assert 4 in {v.index for v in graph.vertices}
    report = check_assumptions(graph)
    assert not report.accepted
    assert "reducible" in report.kinds()
    assert any(v['vertex'] == 4 and v['detail'] == "crossing is a kink" for v in report.violations)
