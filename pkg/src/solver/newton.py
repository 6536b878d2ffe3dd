"""
Multi-start Newton Solver
-------------------------
This module finds the numerically distinct solutions of a hyperbolicity system
written as products of shape parameters equal to 1, by damped Newton iteration
from many random seeds.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..config import (
    DEDUP_TOL, DEFAULT_RNG_SEED, DEFAULT_SEEDS, DEFAULT_THREADS, EPS_SOLVE,
    ESSENTIAL_TOL, NEWTON_MAX_BACKTRACK, NEWTON_MAX_ITER, SEED_RADIUS_MAX, SEED_RADIUS_MIN,
)
from ..errors import BranchPointError, NoConvergence
from ..potential.monomial import DPRIME, PLAIN, PRIME

# Configure logging
logger = logging.getLogger(__name__)

REGULAR_SHAPE = np.exp(1j * np.pi / 3)
KIND_CODES = {PLAIN: 0, PRIME: 1, DPRIME: 2}


class ShapeSystem:
    """
    Equations P_l(x) = 1 given by ShapeProduct objects, with an analytic Jacobian.

    The equations are compiled once into an exponent matrix over their distinct
    monomials and a term table, so residual and Jacobian are plain array operations.
    """

    real_coefficients = True

    def __init__(self, equations, variable_count=None):
        self.equations = list(equations)
        self.variable_count = variable_count if variable_count is not None else len(self.equations)
        monomials = {}
        rows, kinds, powers, slots = [], [], [], []
        self.signs = np.array([eq.sign for eq in self.equations], dtype=complex)
        for row, eq in enumerate(self.equations):
            for (kind, monomial), e in eq.items():
                slots.append(monomials.setdefault(monomial, len(monomials)))
                rows.append(row)
                kinds.append(KIND_CODES[kind])
                powers.append(e)
        self.exponents = np.zeros((len(monomials), self.variable_count), dtype=int)
        self.zero = np.zeros(len(monomials), dtype=int)
        for monomial, slot in monomials.items():
            for k, a in monomial.powers:
                self.exponents[slot, k] = a
            self.zero[slot] = monomial.zero
        if np.any(self.zero < 0):
            raise BranchPointError("an equation divides by the zero region")
        self.rows = np.array(rows, dtype=int)
        self.kinds = np.array(kinds, dtype=int)
        self.powers = np.array(powers, dtype=int)
        self.slots = np.array(slots, dtype=int)
        self.membership = np.zeros((len(self.equations), len(rows)))
        self.membership[self.rows, np.arange(len(rows))] = 1.0

    def _monomials(self, x):
        x = np.asarray(x, dtype=complex)
        if np.any(x == 0):
            raise BranchPointError("a variable vanishes")
        values = np.prod(x[None, :] ** self.exponents, axis=1)
        values[self.zero > 0] = 0
        return x, values[self.slots]

    def _factors(self, m):
        if np.any((self.kinds == 1) & (m == 1)) or np.any((self.kinds == 2) & (m == 0)):
            raise BranchPointError("a shape parameter is infinite")
        with np.errstate(divide='ignore', invalid='ignore'):
            return np.select([self.kinds == 0, self.kinds == 1], [m, 1.0 / (1.0 - m)], 1.0 - 1.0 / m)

    def _values(self, m):
        values = self.signs.copy()
        np.multiply.at(values, self.rows, self._factors(m) ** self.powers)
        return values

    def residual(self, x):
        _, m = self._monomials(x)
        return self._values(m) - 1.0

    def jacobian(self, x):
        x, m = self._monomials(x)
        values = self._values(m)
        with np.errstate(divide='ignore', invalid='ignore'):
            scale = np.select([self.kinds == 0, self.kinds == 1], [1.0, m / (1.0 - m)], 1.0 / (m - 1.0))
        terms = (self.powers * scale)[:, None] * self.exponents[self.slots]
        return values[:, None] * (self.membership @ terms) / x[None, :]


class FunctionSystem:
    """Equations F(x) = 0 from a plain callable, with a finite-difference Jacobian."""

    def __init__(self, func, variable_count, step=1e-7):
        self.func = func
        self.variable_count = variable_count
        self.step = step

    def residual(self, x):
        return np.asarray(self.func(x), dtype=complex)

    def jacobian(self, x):
        f0 = self.residual(x)
        columns = []
        for i in range(self.variable_count):
            shifted = np.array(x, dtype=complex)
            shifted[i] += self.step
            columns.append((self.residual(shifted) - f0) / self.step)
        return np.array(columns).T


def as_system(system, variable_count=None):
    if hasattr(system, "residual") and hasattr(system, "jacobian"):
        return system
    if callable(system):
        if variable_count is None:
            raise ValueError("variable_count is required for a callable system")
        return FunctionSystem(system, variable_count)
    return ShapeSystem(system, variable_count)


def _degenerate(x):
    return bool(np.any(np.abs(x) < ESSENTIAL_TOL) or np.any(np.abs(x) > 1.0 / ESSENTIAL_TOL)
                or not np.all(np.isfinite(x)))


def _polish(system, x, norm, steps=3):
    """A few plain Newton steps past the threshold while the residual keeps shrinking."""
    for _ in range(steps):
        try:
            f = system.residual(x)
            step = np.linalg.lstsq(system.jacobian(x), -f, rcond=None)[0]
            candidate = x + step
            norm_new = float(np.max(np.abs(system.residual(candidate))))
        except (BranchPointError, ZeroDivisionError, np.linalg.LinAlgError, FloatingPointError):
            break
        if not np.isfinite(norm_new) or norm_new >= norm:
            break
        x, norm = candidate, norm_new
    return x, norm


def newton(system, x0, tol=EPS_SOLVE, max_iter=NEWTON_MAX_ITER):
    """
    Damped Newton iteration from one seed.

    Args:
        system: Object with residual(x) and jacobian(x)
        x0 (array): Starting point
        tol (float): Convergence threshold on max |residual|

    Returns:
        tuple: (x, residual norm, status) with status 'converged', 'diverged',
            'singular' or 'max_iter'
    """
    x = np.array(x0, dtype=complex)
    try:
        f = system.residual(x)
    except (BranchPointError, ZeroDivisionError, FloatingPointError, OverflowError):
        return x, np.inf, 'diverged'
    norm = float(np.max(np.abs(f))) if f.size else 0.0
    for _ in range(max_iter):
        if norm <= tol:
            x, norm = _polish(system, x, norm)
            return x, norm, 'degenerate' if _degenerate(x) else 'converged'
        try:
            jacobian = system.jacobian(x)
            step = np.linalg.lstsq(jacobian, -f, rcond=None)[0]
        except (BranchPointError, ZeroDivisionError, np.linalg.LinAlgError, FloatingPointError):
            return x, norm, 'singular'
        scale = 1.0
        for _ in range(NEWTON_MAX_BACKTRACK):
            candidate = x + scale * step
            try:
                f_new = system.residual(candidate)
                norm_new = float(np.max(np.abs(f_new)))
            except (BranchPointError, ZeroDivisionError, FloatingPointError, OverflowError):
                norm_new = np.inf
            if np.isfinite(norm_new) and norm_new < norm:
                break
            scale *= 0.5
        else:
            return x, norm, 'diverged'
        x, f, norm = candidate, f_new, norm_new
        if _degenerate(x):
            return x, norm, 'degenerate'
    if norm <= tol:
        return x, norm, 'degenerate' if _degenerate(x) else 'converged'
    return x, norm, 'max_iter'


def make_seeds(variable_count, count, rng_seed):
    """Random seeds in the annulus SEED_RADIUS_MIN <= |x| <= SEED_RADIUS_MAX plus regular-shape seeds."""
    rng = np.random.default_rng(rng_seed)
    seeds = [
        np.full(variable_count, REGULAR_SHAPE),
        np.full(variable_count, REGULAR_SHAPE) * (1 + 0.05 * rng.standard_normal(variable_count)),
    ]
    for _ in range(max(count - len(seeds), 0)):
        radius = rng.uniform(SEED_RADIUS_MIN, SEED_RADIUS_MAX, variable_count)
        phase = rng.uniform(-np.pi, np.pi, variable_count)
        seeds.append(radius * np.exp(1j * phase))
    return seeds[:max(count, 1)]


def deduplicate(points, tol=DEDUP_TOL):
    """Keep points at max-norm distance > tol from every earlier point."""
    unique = []
    for point in points:
        if all(np.max(np.abs(point - other)) > tol for other in unique):
            unique.append(point)
    return unique


def canonical_order(points):
    return sorted(points, key=lambda p: tuple(np.round(np.concatenate([p.real, p.imag]), 8)))


def solve(system, seeds=DEFAULT_SEEDS, rng_seed=DEFAULT_RNG_SEED, variable_count=None,
          tol=EPS_SOLVE, threads=DEFAULT_THREADS, extra_starts=None):
    """
    Find distinct solutions of a system from many seeds.

    Systems with real coefficients are closed under complex conjugation, so the
    conjugate of every converged point is polished and kept as well.

    Args:
        system: List of ShapeProduct equations, a system object or a callable
        seeds (int): Number of random starting points
        rng_seed (int): Seed of the random generator
        variable_count (int, optional): Number of unknowns
        tol (float): Residual threshold
        threads (int): Worker threads
        extra_starts (list, optional): Structured starting points tried after the random ones

    Returns:
        list: Solution vectors, deduplicated and in canonical order

    Raises:
        NoConvergence: If no seed converges to a non-degenerate point
    """
    system = as_system(system, variable_count)
    n = system.variable_count
    if n == 0:
        raise NoConvergence("system has no unknowns", {'seeds': 0})
    starts = make_seeds(n, seeds, rng_seed)
    starts += [np.asarray(x, dtype=complex) for x in extra_starts or [] if len(x) == n]

    def run(x0):
        return newton(system, x0, tol)

    def run_all(points):
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                return list(pool.map(run, points))
        return [run(x0) for x0 in points]

    with np.errstate(all='ignore'):
        results = run_all(starts)
        diagnostics = {'seeds': len(starts)}
        for _, _, status in results:
            diagnostics[status] = diagnostics.get(status, 0) + 1
        converged = deduplicate(canonical_order([x for x, _, status in results if status == 'converged']))
        if getattr(system, 'real_coefficients', False):
            mirrored = [np.conj(x) for x in converged]
            mirrored = [x for x in mirrored if all(np.max(np.abs(x - y)) > DEDUP_TOL for y in converged)]
            added = [x for x, _, status in run_all(mirrored) if status == 'converged']
            diagnostics['conjugates'] = len(added)
            converged += added
    if not converged:
        logger.error(f"No seed converged: {diagnostics}")
        raise NoConvergence("no seed converged", diagnostics)
    solutions = canonical_order(deduplicate(canonical_order(converged)))
    logger.info(f"Found {len(solutions)} distinct solutions from {len(starts)} seeds ({diagnostics})")
    return solutions
