"""
Potential Function Module
-------------------------
This module provides PotentialFunction, an exact sum of signed dilogarithms of
monomials, products of two logarithms of monomials and a rational multiple of
pi^2, together with its evaluation, logarithmic derivatives, shape-product form
and flattened value.
"""
import logging
from fractions import Fraction

import numpy as np

from ..config import EPS_SOLVE
from ..errors import BranchPointError, DomainError, NotASolution
from ..numerics import clog, dilog, snap_two_pi_i, PI2
from .monomial import Monomial, ShapeProduct

# Configure logging
logger = logging.getLogger(__name__)


def _log_of(monomial, x):
    value = monomial.evaluate(x)
    try:
        return clog(value)
    except DomainError:
        raise BranchPointError(f"log({monomial}) at a zero")


class PotentialFunction:
    """Sum of ±Li2(M), ±log(M1)log(M2) and a multiple of pi^2."""

    def __init__(self, dilog_terms=None, loglog_terms=None, pi2_coef=0, variable_count=0, names=None):
        """
        Initialize a potential.

        Args:
            dilog_terms (list): (coefficient, Monomial) pairs
            loglog_terms (list): (coefficient, Monomial, Monomial) triples
            pi2_coef (Fraction): Constant term divided by pi^2
            variable_count (int): Number of variables
            names (list, optional): Display names of the variables
        """
        self.dilog_terms = list(dilog_terms or [])
        self.loglog_terms = list(loglog_terms or [])
        self.pi2_coef = Fraction(pi2_coef)
        self.variable_count = variable_count
        self.names = list(names) if names else [f"x{i + 1}" for i in range(variable_count)]

    def collect(self):
        """Combine equal terms, cancel opposite ones and fold constants into pi^2."""
        dilogs = {}
        pi2 = self.pi2_coef
        for coef, m in self.dilog_terms:
            if m.is_constant:
                pi2 += Fraction(coef, 6)
                continue
            dilogs[m] = dilogs.get(m, 0) + coef
        loglogs = {}
        for coef, m1, m2 in self.loglog_terms:
            if m1.is_constant or m2.is_constant:
                continue
            key = tuple(sorted((m1, m2)))
            loglogs[key] = loglogs.get(key, 0) + coef
        return PotentialFunction(
            [(c, m) for m, c in sorted(dilogs.items()) if c],
            [(c, m1, m2) for (m1, m2), c in sorted(loglogs.items()) if c],
            pi2, self.variable_count, self.names)

    def __add__(self, other):
        count = max(self.variable_count, other.variable_count)
        names = self.names if self.variable_count >= other.variable_count else other.names
        return PotentialFunction(self.dilog_terms + other.dilog_terms,
                                 self.loglog_terms + other.loglog_terms,
                                 self.pi2_coef + other.pi2_coef, count, names)

    def substitute(self, mapping, variable_count, names=None):
        """Replace symbols in every monomial; see Monomial.substitute."""
        return PotentialFunction(
            [(c, m.substitute(mapping)) for c, m in self.dilog_terms],
            [(c, m1.substitute(mapping), m2.substitute(mapping)) for c, m1, m2 in self.loglog_terms],
            self.pi2_coef, variable_count, names)

    def evaluate(self, x):
        """
        Evaluate at a point.

        Args:
            x (sequence): Complex variable values

        Returns:
            complex: The value of the potential

        Raises:
            BranchPointError: If a logarithm argument vanishes
        """
        total = complex(float(self.pi2_coef) * PI2)
        for coef, m in self.dilog_terms:
            total += coef * dilog(m.evaluate(x))
        for coef, m1, m2 in self.loglog_terms:
            total += coef * _log_of(m1, x) * _log_of(m2, x)
        return total

    def log_derivative(self, x, index):
        """x_l times the partial derivative in x_l, in closed form."""
        total = 0j
        for coef, m in self.dilog_terms:
            a = m.exponent(index)
            if a == 0:
                continue
            value = m.evaluate(x)
            if value == 1:
                raise BranchPointError(f"Li2({m}) differentiated at 1")
            total += -coef * a * clog(1.0 - value)
        for coef, m1, m2 in self.loglog_terms:
            a1 = m1.exponent(index)
            a2 = m2.exponent(index)
            if a1:
                total += coef * a1 * _log_of(m2, x)
            if a2:
                total += coef * a2 * _log_of(m1, x)
        return total

    def shape_product_form(self, index):
        """
        Exact form of exp(x_l d/dx_l) as a shape product.

        Args:
            index (int): Variable index l

        Returns:
            ShapeProduct: Product of M, M' and M'' factors with a sign
        """
        one_minus = {}
        plain = Monomial.one()
        for coef, m in self.dilog_terms:
            a = m.exponent(index)
            if a:
                one_minus[m] = one_minus.get(m, 0) - coef * a
        for coef, m1, m2 in self.loglog_terms:
            a1 = m1.exponent(index)
            a2 = m2.exponent(index)
            if a1:
                plain = plain * m2 ** (coef * a1)
            if a2:
                plain = plain * m1 ** (coef * a2)
        return ShapeProduct.from_log_terms(one_minus, plain)

    def hyperbolicity_equations(self):
        return [self.shape_product_form(l) for l in range(self.variable_count)]

    def flattened(self, x, tol=EPS_SOLVE):
        """
        Flattened value with each log-derivative snapped to 2*pi*i*k.

        Raises:
            NotASolution: If some log-derivative is farther than tol from 2*pi*i*Z
        """
        total = self.evaluate(x)
        for l in range(self.variable_count):
            d = self.log_derivative(x, l)
            k, distance = snap_two_pi_i(d)
            if distance > tol:
                raise NotASolution(f"{self.names[l]} derivative {d} is {distance:.3e} from 2*pi*i*Z")
            if k:
                logger.debug(f"{self.names[l]} derivative snapped to 2*pi*i*{k}")
            total -= 2j * np.pi * k * clog(complex(x[l]))
        return total

    def local_flattened(self, x):
        """Flattened value with raw log-derivatives."""
        total = self.evaluate(x)
        for l in range(self.variable_count):
            total -= self.log_derivative(x, l) * clog(complex(x[l]))
        return total

    def format(self):
        parts = []
        for coef, m in self.dilog_terms:
            parts.append(f"{'+' if coef > 0 else '-'} {abs(coef) if abs(coef) != 1 else ''}Li2({m.format(self.names)})")
        for coef, m1, m2 in self.loglog_terms:
            parts.append(f"{'+' if coef > 0 else '-'} {abs(coef) if abs(coef) != 1 else ''}"
                         f"log({m1.format(self.names)})log({m2.format(self.names)})")
        if self.pi2_coef:
            parts.append(f"{'+' if self.pi2_coef > 0 else '-'} {abs(self.pi2_coef)}pi^2")
        text = " ".join(parts).lstrip("+ ")
        return text or "0"

    def to_dict(self):
        return {
            'variable_count': self.variable_count,
            'names': self.names,
            'pi2_coef': [self.pi2_coef.numerator, self.pi2_coef.denominator],
            'dilog_terms': [{'coef': c, 'monomial': m.to_dict()} for c, m in self.dilog_terms],
            'loglog_terms': [{'coef': c, 'left': m1.to_dict(), 'right': m2.to_dict()}
                             for c, m1, m2 in self.loglog_terms],
        }

    @classmethod
    def from_dict(cls, data):
        numerator, denominator = data.get('pi2_coef', [0, 1])
        return cls(
            [(t['coef'], Monomial.from_dict(t['monomial'])) for t in data.get('dilog_terms', [])],
            [(t['coef'], Monomial.from_dict(t['left']), Monomial.from_dict(t['right']))
             for t in data.get('loglog_terms', [])],
            Fraction(numerator, denominator), data['variable_count'], data.get('names'))

    def __eq__(self, other):
        if not isinstance(other, PotentialFunction):
            return False
        a, b = self.collect(), other.collect()
        return (a.dilog_terms == b.dilog_terms and a.loglog_terms == b.loglog_terms
                and a.pi2_coef == b.pi2_coef and a.variable_count == b.variable_count)

    def __str__(self):
        return self.format()


def evaluate(p, x):
    return p.evaluate(x)


def log_derivative(p, x, index):
    return p.log_derivative(x, index)


def shape_product_form(p, index):
    return p.shape_product_form(index)


def flattened(p, x, tol=EPS_SOLVE):
    return p.flattened(x, tol)


def local_flattened(p, x):
    return p.local_flattened(x)
