"""
Reduction Utilities Module
--------------------------
This module provides the nearest-integer snapping used for the mod 2*pi*i and
mod 4*pi^2 statements.
"""
import math

TWO_PI_I = 2j * math.pi


def nearest_multiple(value, period):
    """
    Nearest integer multiple count of a real period.

    Args:
        value (float): Real value
        period (float): Positive period

    Returns:
        int: round(value / period)
    """
    return int(round(value / period))


def reduce_mod(value, period, centered=True):
    """
    Reduce a real value modulo a period.

    Args:
        value (float): Real value
        period (float): Positive period
        centered (bool): Reduce into [-period/2, period/2] instead of [0, period)

    Returns:
        float: Reduced value
    """
    if centered:
        return value - period * nearest_multiple(value, period)
    return value - period * math.floor(value / period)


def reduce_real_part(value, period):
    """Reduce the real part of a complex value modulo a period, keeping the imaginary part."""
    value = complex(value)
    return complex(reduce_mod(value.real, period), value.imag)


def snap_two_pi_i(value):
    """
    Snap a complex value to the nearest point of 2*pi*i*Z.

    Args:
        value (complex): Value expected near 2*pi*i*k

    Returns:
        tuple: (k, distance) with k the integer and distance |value - 2*pi*i*k|
    """
    value = complex(value)
    k = int(round(value.imag / (2 * math.pi)))
    return k, abs(value - k * TWO_PI_I)
