"""
Special Functions Module
------------------------
This module provides the complex special functions used throughout the toolkit:
the principal logarithm, the dilogarithm Li_2, the Bloch-Wigner function and the
shape-parameter triple of an ideal tetrahedron.

Branch conventions: arg lies in (-pi, pi]; Li_2 has its cut on (1, inf) and takes
the boundary values from below on the cut.
"""
import cmath
import logging
import math
from fractions import Fraction

from ..errors import DomainError

# Configure logging
logger = logging.getLogger(__name__)

PI2 = math.pi * math.pi
PI2_6 = PI2 / 6.0

_BERNOULLI_TERMS = 40


def _bernoulli_coefficients(count):
    """
    Coefficients B_n / (n+1)! of the Bernoulli form of the dilogarithm.

    Args:
        count (int): Number of coefficients

    Returns:
        list: Floats c_n with Li_2(z) = sum c_n u^(n+1), u = -log(1-z)
    """
    numbers = [Fraction(0)] * count
    numbers[0] = Fraction(1)
    for m in range(1, count):
        numbers[m] = -sum(math.comb(m + 1, k) * numbers[k] for k in range(m)) / (m + 1)
    return [float(numbers[n] / math.factorial(n + 1)) for n in range(count)]


_COEFFICIENTS = _bernoulli_coefficients(_BERNOULLI_TERMS)


def _arg(z):
    phase = cmath.phase(z)
    if phase == -math.pi:
        phase = math.pi
    return phase


def clog(z):
    """
    Principal logarithm with arg in (-pi, pi].

    Args:
        z (complex): Nonzero argument

    Returns:
        complex: log|z| + i arg(z)

    Raises:
        DomainError: If z is zero
    """
    z = complex(z)
    if z == 0:
        raise DomainError("log of zero")
    return complex(math.log(abs(z)), _arg(z))


def _bernoulli_series(z):
    u = -clog(1 - z)
    u2 = u * u
    total = _COEFFICIENTS[0] * u + _COEFFICIENTS[1] * u2
    power = u
    # odd Bernoulli numbers beyond B_1 vanish
    for n in range(2, _BERNOULLI_TERMS, 2):
        power = power * u2
        total += _COEFFICIENTS[n] * power
    return total


def _dilog_unit_disk(z):
    if z.real > 0.5:
        w = 1 - z
        return PI2_6 - clog(z) * clog(w) - _bernoulli_series(w)
    return _bernoulli_series(z)


def dilog(z):
    """
    Principal branch of the dilogarithm Li_2.

    The plane is mapped into the unit disk with the inversion relation, then
    into the half disk Re z <= 1/2 with the reflection relation, where the
    Bernoulli series in -log(1-z) converges fast.

    Args:
        z (complex): Finite argument

    Returns:
        complex: Li_2(z)
    """
    z = complex(z)
    if z == 0:
        return 0j
    if z == 1:
        return complex(PI2_6)
    if abs(z) > 1:
        lz = clog(-z)
        return -_dilog_unit_disk(1 / z) - PI2_6 - 0.5 * lz * lz
    return _dilog_unit_disk(z)


def bloch_wigner(z):
    """
    Bloch-Wigner function D(z) = Im Li_2(z) + log|z| arg(1-z).

    D(z) is the volume of the ideal tetrahedron with shape z.

    Args:
        z (complex): Argument outside {0, 1}

    Returns:
        float: D(z)

    Raises:
        DomainError: If z is 0 or 1
    """
    z = complex(z)
    if z == 0 or z == 1:
        raise DomainError(f"Bloch-Wigner function undefined at {z}")
    return dilog(z).imag + math.log(abs(z)) * _arg(1 - z)


def shape_triple(u):
    """
    Shape parameters (u, u', u'') of an ideal tetrahedron.

    Args:
        u (complex): Shape parameter outside {0, 1}

    Returns:
        tuple: (u, 1/(1-u), 1-1/u)

    Raises:
        DomainError: If u is 0 or 1
    """
    u = complex(u)
    if u == 0 or u == 1:
        raise DomainError(f"degenerate shape parameter {u}")
    return u, 1 / (1 - u), 1 - 1 / u
