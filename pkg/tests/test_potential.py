import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from src.errors import BranchPointError, NotASolution
from src.numerics import dilog
from src.potential import (
    Monomial, PotentialFunction, ShapeProduct, build_V, build_W, crossing_function, evaluate, flattened,
    local_flattened, log_derivative, shape_product_form, vertex_potentials,
)
from src.utils.dump_manager import load_potentials
from src.utils.path_utils import get_fixture_path

REGULAR = cmath.exp(1j * math.pi / 3)
KASHAEV_SOLUTION = np.array([0.337641 - 0.562280j, 0.122561 + 0.744862j])


def kashaev():
    return load_potentials(get_fixture_path("5_2_kashaev.json"))['potential']


def finite_log_derivative(p, x, index, h=1e-6):
    shifted = np.array(x, dtype=complex)
    shifted[index] *= (1 + h)
    backward = np.array(x, dtype=complex)
    backward[index] *= (1 - h)
    return (p.evaluate(shifted) - p.evaluate(backward)) / (2 * h)


def test_monomial_arithmetic():
    a = Monomial.var(0) * Monomial.var(1) / Monomial.var(2)
    assert a.exponent(0) == 1
    assert a.exponent(2) == -1
    assert (a / a).is_constant
    assert (a ** 2).exponent(1) == 2
    assert a.inverse() * a == Monomial.one()
    assert a.evaluate([2, 3, 4]) == pytest.approx(1.5)


def test_monomial_substitute():
    m = Monomial.var(10) * Monomial.var(11) / Monomial.var(12)
    s = m.substitute({10: 0, 11: 'unit', 12: 'zero'})
    assert s.exponent(0) == 1
    assert s.zero == -1
    with pytest.raises(BranchPointError):
        s.evaluate([2.0])
    assert Monomial.var(0).substitute({0: 'zero'}).evaluate([2.0]) == 0


def test_shape_product_canonical_form():
    m = Monomial.var(0)
    # exp(-log(1 - x)) is x'
    assert ShapeProduct.from_log_terms({m: -1}, Monomial.one()).evaluate([0.5]) == pytest.approx(2.0)
    # exp(log(1 - x)) is -x x''
    product = ShapeProduct.from_log_terms({m: 1}, Monomial.one())
    assert product.sign == -1
    assert product.evaluate([0.25]) == pytest.approx(0.75)


def test_kashaev_fixture_equations():
    f = kashaev()
    assert f.names == ["z", "u"]
    z, u = 0.4 + 0.3j, 1.1 - 0.2j
    assert f.shape_product_form(0).evaluate([z, u]) == pytest.approx((1 - z) ** 2 / u)
    assert f.shape_product_form(1).evaluate([z, u]) == pytest.approx(1 / ((1 - 1 / u) * z))


def test_kashaev_value_at_solution():
    f = kashaev()
    value = f.evaluate(KASHAEV_SOLUTION)
    expected = -2 * dilog(KASHAEV_SOLUTION[0]) - dilog(1 / KASHAEV_SOLUTION[1]) \
        - cmath.log(KASHAEV_SOLUTION[0]) * cmath.log(KASHAEV_SOLUTION[1]) + math.pi ** 2 / 2
    assert value == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("index", [0, 1])
def test_log_derivative_matches_finite_difference(index):
    f = kashaev()
    x = np.array([0.4 + 0.3j, 1.1 - 0.2j])
    assert log_derivative(f, x, index) == pytest.approx(finite_log_derivative(f, x, index), abs=1e-7)


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("variant", [1, 2, 3, 4])
def test_crossing_function_derivatives(sign, variant):
    p = crossing_function(sign, variant)
    x = np.array([0.9 + 0.4j, 1.3 - 0.2j, 0.7 + 0.8j, 1.1 + 0.1j])
    for index in range(4):
        assert p.log_derivative(x, index) == pytest.approx(finite_log_derivative(p, x, index), abs=1e-7)
        assert cmath.exp(p.log_derivative(x, index)) == pytest.approx(p.shape_product_form(index).evaluate(x),
                                                                      rel=1e-10)


def test_first_positive_crossing_function():
    p = crossing_function(1, 1)
    j, k, l, m = 0.9 + 0.4j, 1.3 - 0.2j, 0.7 + 0.8j, 1.1 + 0.1j
    expected = (-dilog(l / m) - dilog(l / k) + dilog(j * l / (k * m)) + dilog(m / j) + dilog(k / j)
                - math.pi ** 2 / 6 + cmath.log(m / j) * cmath.log(k / j))
    assert p.evaluate([j, k, l, m]) == pytest.approx(expected, abs=1e-12)


def test_collect_cancels_opposite_terms():
    m = Monomial.var(0)
    p = PotentialFunction([(1, m), (-1, m), (1, Monomial.one())], [], 0, 1)
    collected = p.collect()
    assert collected.dilog_terms == []
    assert collected.pi2_coef == Fraction(1, 6)


def test_dict_round_trip():
    f = kashaev()
    assert PotentialFunction.from_dict(f.to_dict()) == f
    p = crossing_function(-1, 3)
    assert PotentialFunction.from_dict(p.to_dict()) == p


def test_flattened_requires_a_solution():
    f = kashaev()
    with pytest.raises(NotASolution):
        flattened(f, np.array([0.4 + 0.3j, 1.1 - 0.2j]))


def test_local_and_snapped_flattening_agree_at_solution():
    f = kashaev()
    z = np.roots([1, -3, 2, -1])
    z0 = z[np.argmin(np.abs(z - KASHAEV_SOLUTION[0]))]
    point = np.array([z0, (1 - z0) ** 2])
    assert abs(flattened(f, point) - local_flattened(f, point)) < 1e-9


def test_figure_eight_potentials(figure_eight_graph, figure_eight_assignment):
    V = build_V(figure_eight_graph, figure_eight_assignment)
    W = build_W(figure_eight_graph, figure_eight_assignment)
    assert V.variable_count == 1
    assert W.variable_count == 1
    for w in (0.3 + 0.7j, -1.2 + 0.4j, 2.0 - 1.0j):
        assert W.shape_product_form(0).evaluate([w]) == pytest.approx(-w / (1 - w) ** 2, rel=1e-12)
        assert V.shape_product_form(0).evaluate([w]) == pytest.approx(-w / (1 - w) ** 2, rel=1e-12)
    for root in (REGULAR, REGULAR.conjugate()):
        assert abs(W.shape_product_form(0).evaluate([root]) - 1) < 1e-12
        assert abs(V.shape_product_form(0).evaluate([root]) - 1) < 1e-12


def test_figure_eight_flattened_volume(figure_eight_graph, figure_eight_assignment):
    W = build_W(figure_eight_graph, figure_eight_assignment)
    values = sorted(flattened(W, [root]).imag for root in (REGULAR, REGULAR.conjugate()))
    assert values[1] == pytest.approx(2.029883212819307, abs=1e-9)
    assert values[0] == pytest.approx(-2.029883212819307, abs=1e-9)


def test_vertex_pieces_sum_to_potentials(figure_eight_graph, figure_eight_assignment):
    pieces = vertex_potentials(figure_eight_graph, figure_eight_assignment)
    assert set(pieces) == {1, 2}
    V = build_V(figure_eight_graph, figure_eight_assignment)
    W = build_W(figure_eight_graph, figure_eight_assignment)
    x = [0.3 + 0.7j]
    assert sum(p['V'].evaluate(x) for p in pieces.values()) == pytest.approx(evaluate(V, x), abs=1e-12)
    assert sum(p['W'].evaluate(x) for p in pieces.values()) == pytest.approx(evaluate(W, x), abs=1e-12)
    assert shape_product_form(W, 0) == W.shape_product_form(0)


def test_empty_potential_is_its_constant():
    p = PotentialFunction([], [], Fraction(1, 2), 2)
    assert evaluate(p, [0.3 + 1j, 2.0]) == pytest.approx(math.pi ** 2 / 2)
