"""
Shape Transport Moves
---------------------
This module provides the 4-5 move between the four Yokota tetrahedra and the
five Thurston tetrahedra of an octahedron, and the 3-2 moves of octahedra with
one collapsed horizontal edge.

Yokota shapes t1..t4 sit on the horizontal edges CD, DA, AB, BC; Thurston shapes
u1..u4 belong to BCDF, ACDE, ABDF, ABCE and u5 to ABCD.
"""
import logging

from ..config import ESSENTIAL_TOL
from ..errors import DegenerateShape, DomainError
from ..numerics import shape_triple

# Configure logging
logger = logging.getLogger(__name__)

HORIZONTAL = ("CD", "DA", "AB", "BC")

# Surviving Thurston shapes (by index) when one horizontal edge collapses
COLLAPSED_SURVIVORS = {
    "AB": (1, 2),
    "BC": (2, 3),
    "CD": (3, 4),
    "DA": (1, 4),
}


def _check(values, what):
    for value in values:
        if abs(value) < ESSENTIAL_TOL or abs(value - 1) < ESSENTIAL_TOL or abs(value) > 1.0 / ESSENTIAL_TOL:
            raise DegenerateShape(f"{what} {value} is degenerate")


def _prime(t):
    try:
        return shape_triple(t)[1]
    except DomainError as e:
        raise DegenerateShape(str(e))


def _dprime(t):
    try:
        return shape_triple(t)[2]
    except DomainError as e:
        raise DegenerateShape(str(e))


def move_45(ts):
    """
    Four Yokota shapes to five Thurston shapes.

    Args:
        ts (tuple): (t1, t2, t3, t4) on CD, DA, AB, BC

    Returns:
        tuple: (u1, u2, u3, u4, u5)

    Raises:
        DegenerateShape: If an input or output lies at 0, 1 or infinity
    """
    t1, t2, t3, t4 = ts
    _check(ts, "input shape")
    u1 = _prime(t1) * _dprime(t4)
    u2 = _prime(t1) * _dprime(t2)
    u3 = _prime(t3) * _dprime(t2)
    u4 = _prime(t3) * _dprime(t4)
    u5 = 1.0 / (_prime(t1) * _dprime(t2) * _prime(t3) * _dprime(t4))
    result = (u1, u2, u3, u4, u5)
    _check(result, "output shape")
    return result


def inverse_45(us):
    """Five Thurston shapes back to the four Yokota shapes."""
    u1, u2, u3, u4, u5 = us
    _check(us, "input shape")
    return (
        _dprime(u1) * _dprime(u2) * _prime(u5),
        _prime(u2) * _prime(u3) * _dprime(u5),
        _dprime(u3) * _dprime(u4) * _prime(u5),
        _prime(u4) * _prime(u1) * _dprime(u5),
    )


def collapsed_move(ts, missing):
    """
    3-2 move of an octahedron with one collapsed horizontal edge.

    Args:
        ts (dict): Horizontal edge name -> Yokota shape for the three surviving edges
        missing (str): The collapsed edge, one of 'AB', 'BC', 'CD', 'DA'

    Returns:
        dict: Thurston index (1..4) -> shape for the two surviving Thurston tetrahedra
    """
    if missing not in COLLAPSED_SURVIVORS:
        raise ValueError(f"unknown horizontal edge {missing}")
    _check(ts.values(), "input shape")
    t = {name: ts.get(name) for name in HORIZONTAL}

    def prime(name):
        return 1.0 if t[name] is None else _prime(t[name])

    def dprime(name):
        return 1.0 if t[name] is None else _dprime(t[name])

    formulas = {
        1: lambda: prime("CD") * dprime("BC"),
        2: lambda: prime("CD") * dprime("DA"),
        3: lambda: prime("AB") * dprime("DA"),
        4: lambda: prime("AB") * dprime("BC"),
    }
    result = {i: formulas[i]() for i in COLLAPSED_SURVIVORS[missing]}
    _check(result.values(), "output shape")
    return result


def inverse_collapsed_move(us, missing):
    """
    Two Thurston shapes back to the three Yokota shapes of a collapsed octahedron.

    Args:
        us (dict): Thurston index -> shape, as returned by collapsed_move
        missing (str): The collapsed edge

    Returns:
        dict: Horizontal edge name -> Yokota shape
    """
    _check(us.values(), "input shape")
    u = us
    if missing == "AB":
        return {"CD": _dprime(u[1]) * _dprime(u[2]), "DA": u[1] * _prime(u[2]), "BC": _prime(u[1]) * u[2]}
    if missing == "BC":
        return {"CD": _dprime(u[2]) * u[3], "DA": _prime(u[2]) * _prime(u[3]), "AB": u[2] * _dprime(u[3])}
    if missing == "CD":
        return {"DA": _prime(u[3]) * u[4], "AB": _dprime(u[3]) * _dprime(u[4]), "BC": u[3] * _prime(u[4])}
    if missing == "DA":
        return {"CD": _dprime(u[1]) * u[4], "AB": u[1] * _dprime(u[4]), "BC": _prime(u[1]) * _prime(u[4])}
    raise ValueError(f"unknown horizontal edge {missing}")


def move_32(ts):
    """
    3-2 move with AB collapsed.

    Args:
        ts (tuple): (t1, t2, t4) on CD, DA, BC

    Returns:
        tuple: (u1, u2)
    """
    t1, t2, t4 = ts
    result = collapsed_move({"CD": t1, "DA": t2, "BC": t4}, "AB")
    return result[1], result[2]


def inverse_32(us):
    """(u1, u2) back to (t1, t2, t4)."""
    t = inverse_collapsed_move({1: us[0], 2: us[1]}, "AB")
    return t["CD"], t["DA"], t["BC"]
