import pytest

from src.diagram import assign_variables, load_pd, open_tangle
from src.pipeline import compute, load_diagram, prepare
from src.utils.path_utils import get_fixture_path


@pytest.fixture(scope="module")
def figure_eight():
    return load_pd(get_fixture_path("4_1.pd"))


@pytest.fixture(scope="module")
def figure_eight_graph(figure_eight):
    return open_tangle(figure_eight, 2)


@pytest.fixture(scope="module")
def figure_eight_assignment(figure_eight_graph):
    return assign_variables(figure_eight_graph)


@pytest.fixture(scope="module")
def figure_eight_prepared(figure_eight):
    return prepare(figure_eight, open_side=2)


@pytest.fixture(scope="module")
def figure_eight_report(figure_eight, figure_eight_prepared):
    return compute(figure_eight, seeds=60, rng_seed=0, prepared=figure_eight_prepared)


@pytest.fixture(scope="module")
def five_two_report():
    return compute(load_diagram(knot="5_2"), seeds=200, rng_seed=0)
