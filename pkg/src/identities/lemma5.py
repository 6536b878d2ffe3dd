"""
Octahedron Dilogarithm Identities
---------------------------------
This module provides random octahedron samples and the residuals of the
dilogarithm identities relating the four Yokota tetrahedra of an octahedron to
its five Thurston tetrahedra, for the full octahedron (four forms) and for
octahedra with one collapsed horizontal edge (four forms).

Residuals are taken after removing the nearest multiple of 4*pi^2 from the real
part.
"""
import logging
import math

import numpy as np

from ..config import EPS_FN, SAMPLE_MARGIN, SAMPLE_RADIUS
from ..errors import DegenerateSample, DegenerateShape, DomainError
from ..numerics import clog, dilog, reduce_real_part
from ..triangulation.moves import collapsed_move, move_45

# Configure logging
logger = logging.getLogger(__name__)

PI2_6 = math.pi ** 2 / 6
FOUR_PI2 = 4 * math.pi ** 2

FULL_FORMS = (22, 23, 24, 25)
COLLAPSED_FORMS = (26, 27, 28, 29)

# Collapsed form -> (missing Yokota index, collapsed horizontal edge, surviving Thurston indices)
COLLAPSED = {
    26: (3, "AB", (1, 2)),
    27: (4, "BC", (2, 3)),
    28: (1, "CD", (3, 4)),
    29: (2, "DA", (1, 4)),
}
HORIZONTAL_BY_INDEX = {1: "CD", 2: "DA", 3: "AB", 4: "BC"}


class OctahedronSample:
    """Yokota shapes t1..t4 of an octahedron and the Thurston shapes u1..u5 they induce."""

    def __init__(self, t, u=None, missing=None):
        """
        Initialize a sample.

        Args:
            t (dict): Yokota index (1..4) -> shape; the collapsed index is absent
            u (dict, optional): Thurston index (1..5) -> shape; computed when omitted
            missing (int, optional): Index of the collapsed horizontal edge

        Raises:
            DegenerateSample: If a shape lies at 0, 1 or infinity
        """
        self.t = {i: complex(v) for i, v in t.items()}
        self.missing = missing
        if u is None:
            u = self._induce()
        self.u = {i: complex(v) for i, v in u.items()}

    def _induce(self):
        try:
            if self.missing is None:
                return dict(zip((1, 2, 3, 4, 5), move_45(tuple(self.t[i] for i in (1, 2, 3, 4)))))
            ts = {HORIZONTAL_BY_INDEX[i]: v for i, v in self.t.items()}
            return collapsed_move(ts, HORIZONTAL_BY_INDEX[self.missing])
        except DegenerateShape as e:
            raise DegenerateSample(str(e))

    @property
    def constraint(self):
        """|product of the present t - 1|."""
        return abs(np.prod(list(self.t.values())) - 1.0)

    def to_dict(self):
        return {
            't': {str(i): [v.real, v.imag] for i, v in self.t.items()},
            'u': {str(i): [v.real, v.imag] for i, v in self.u.items()},
            'missing': self.missing,
        }

    def __str__(self):
        t = ", ".join(f"t{i}={v:.4g}" for i, v in sorted(self.t.items()))
        return f"OctahedronSample({t})"


def _random_shape(rng, radius=SAMPLE_RADIUS, margin=SAMPLE_MARGIN):
    while True:
        r = math.sqrt(rng.uniform(margin ** 2, radius ** 2))
        phase = rng.uniform(-math.pi, math.pi)
        value = complex(r * math.cos(phase), r * math.sin(phase))
        if abs(value - 1) > margin:
            return value


def _far(value, margin):
    return abs(value) > margin and abs(value - 1) > margin and abs(value) < 1.0 / margin


def random_sample(rng, missing=None, radius=SAMPLE_RADIUS, margin=SAMPLE_MARGIN, center=None, spread=None,
                  attempts=1000):
    """
    Draw a constrained octahedron sample.

    Free shapes are drawn in the annulus margin <= |t| <= radius away from 1, or
    around center within spread when both are given; the last present shape closes
    the product to 1.

    Args:
        rng (numpy.random.Generator): Random source
        missing (int, optional): Collapsed Yokota index
        center (complex, optional): Center of a local sample
        spread (float, optional): Radius of a local sample

    Returns:
        OctahedronSample: A non-degenerate sample

    Raises:
        DegenerateSample: If no valid sample is found within the attempt budget
    """
    present = [i for i in (1, 2, 3, 4) if i != missing]
    for _ in range(attempts):
        t = {}
        for i in present[:-1]:
            if center is not None and spread is not None:
                t[i] = center + spread * complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            else:
                t[i] = _random_shape(rng, radius, margin)
        t[present[-1]] = 1.0 / np.prod(list(t.values()))
        if not all(_far(v, margin) for v in t.values()):
            continue
        try:
            sample = OctahedronSample(t, missing=missing)
        except DegenerateSample:
            continue
        if all(_far(v, margin / 10) for v in sample.u.values()):
            return sample
    raise DegenerateSample(f"no admissible sample in {attempts} attempts")


def calibration_sample():
    """All Yokota shapes i; the Thurston shapes are i, i, i, i and -1."""
    return OctahedronSample({1: 1j, 2: 1j, 3: 1j, 4: 1j})


def collapsed_calibration_sample(form):
    """All present Yokota shapes exp(2*pi*i/3); the two Thurston shapes are exp(pi*i/3)."""
    missing = COLLAPSED[form][0]
    value = complex(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))
    return OctahedronSample({i: value for i in (1, 2, 3, 4) if i != missing}, missing=missing)


def _log1m(x):
    try:
        return clog(1 - x)
    except DomainError as e:
        raise DegenerateSample(str(e))


def _li(x):
    try:
        return dilog(x)
    except DomainError as e:
        raise DegenerateSample(str(e))


def _corrections(t):
    """Log combinations of the Yokota shapes shared by all forms."""
    t1, t2, t3, t4 = (t.get(i) for i in (1, 2, 3, 4))
    c = {}
    if t1 is not None and t4 is not None:
        c['a4'] = -_log1m(t1) + _log1m(1 / t4)
    if t1 is not None and t2 is not None:
        c['a2'] = -_log1m(t1) + _log1m(1 / t2)
    if t3 is not None and t2 is not None:
        c['b2'] = -_log1m(t3) + _log1m(1 / t2)
    if t3 is not None and t4 is not None:
        c['b4'] = -_log1m(t3) + _log1m(1 / t4)
    return c


def _full_sides(sample, form):
    t, u = sample.t, sample.u
    c = _corrections(t)
    a4, a2, b2, b4 = c['a4'], c['a2'], c['b2'], c['b4']
    s = _log1m(t[1]) - _log1m(1 / t[2]) + _log1m(t[3]) - _log1m(1 / t[4])
    lhs = _li(t[1]) - _li(1 / t[2]) + _li(t[3]) - _li(1 / t[4])
    lu = {i: clog(u[i]) for i in (1, 2, 3, 4)}
    if form == 22:
        rhs = (_li(u[1]) + _li(u[2]) - _li(1 / u[3]) - _li(1 / u[4]) + _li(u[5]) - PI2_6 + lu[1] * lu[2]
               - a4 * lu[2] - a2 * lu[1]
               + a4 * _log1m(u[1]) + a2 * _log1m(u[2])
               + b2 * _log1m(1 / u[3]) + b4 * _log1m(1 / u[4])
               + s * _log1m(u[5]))
    elif form == 23:
        rhs = (_li(u[1]) - _li(1 / u[2]) - _li(1 / u[3]) + _li(u[4]) - _li(1 / u[5]) + PI2_6 - lu[2] * lu[3]
               + b2 * lu[2] + a2 * lu[3]
               + a4 * _log1m(u[1]) + a2 * _log1m(1 / u[2])
               + b2 * _log1m(1 / u[3]) + b4 * _log1m(u[4])
               + s * _log1m(1 / u[5]))
    elif form == 24:
        rhs = (-_li(1 / u[1]) - _li(1 / u[2]) + _li(u[3]) + _li(u[4]) + _li(u[5]) - PI2_6 + lu[3] * lu[4]
               - b4 * lu[3] - b2 * lu[4]
               + a4 * _log1m(1 / u[1]) + a2 * _log1m(1 / u[2])
               + b2 * _log1m(u[3]) + b4 * _log1m(u[4])
               + s * _log1m(u[5]))
    elif form == 25:
        rhs = (-_li(1 / u[1]) + _li(u[2]) + _li(u[3]) - _li(1 / u[4]) - _li(1 / u[5]) + PI2_6 - lu[1] * lu[4]
               + a4 * lu[4] + b4 * lu[1]
               + a4 * _log1m(1 / u[1]) + a2 * _log1m(u[2])
               + b2 * _log1m(u[3]) + b4 * _log1m(1 / u[4])
               + s * _log1m(1 / u[5]))
    else:
        raise ValueError(f"unknown octahedron identity {form}")
    return lhs, rhs


def _collapsed_sides(sample, form):
    t, u = sample.t, sample.u
    c = _corrections(t)
    lu = {i: clog(v) for i, v in u.items()}
    if form == 26:
        lhs = _li(t[1]) - _li(1 / t[2]) - _li(1 / t[4]) + PI2_6
        rhs = (_li(u[1]) + _li(u[2]) - PI2_6 + lu[1] * lu[2]
               + c['a4'] * (-lu[2] + _log1m(u[1]))
               + c['a2'] * (-lu[1] + _log1m(u[2])))
    elif form == 27:
        lhs = _li(t[1]) - _li(1 / t[2]) + _li(t[3]) - PI2_6
        rhs = (-_li(1 / u[2]) - _li(1 / u[3]) + PI2_6 - lu[2] * lu[3]
               + c['b2'] * (lu[2] + _log1m(1 / u[3]))
               + c['a2'] * (lu[3] + _log1m(1 / u[2])))
    elif form == 28:
        lhs = -_li(1 / t[2]) + _li(t[3]) - _li(1 / t[4]) + PI2_6
        rhs = (_li(u[3]) + _li(u[4]) - PI2_6 + lu[3] * lu[4]
               + c['b4'] * (-lu[3] + _log1m(u[4]))
               + c['b2'] * (-lu[4] + _log1m(u[3])))
    elif form == 29:
        lhs = _li(t[1]) + _li(t[3]) - _li(1 / t[4]) - PI2_6
        rhs = (-_li(1 / u[1]) - _li(1 / u[4]) + PI2_6 - lu[1] * lu[4]
               + c['a4'] * (lu[4] + _log1m(1 / u[1]))
               + c['b4'] * (lu[1] + _log1m(1 / u[4])))
    else:
        raise ValueError(f"unknown collapsed octahedron identity {form}")
    return lhs, rhs


def _residual(lhs, rhs):
    return abs(reduce_real_part(lhs - rhs, FOUR_PI2))


def check_lemma5(sample, which):
    """
    Residual of one of the full-octahedron identities.

    Args:
        sample (OctahedronSample): Sample without a collapsed edge
        which (int): 22, 23, 24 or 25

    Returns:
        float: |LHS - RHS| with the real part reduced mod 4*pi^2

    Raises:
        DegenerateSample: If a logarithm or dilogarithm hits a branch point
    """
    if sample.missing is not None:
        raise DegenerateSample("full identities need four Yokota shapes")
    lhs, rhs = _full_sides(sample, which)
    return _residual(lhs, rhs)


def check_lemma5_collapsed(sample, which):
    """
    Residual of one of the collapsed-octahedron identities.

    Args:
        sample (OctahedronSample): Sample whose missing index matches the form
        which (int): 26, 27, 28 or 29

    Returns:
        float: |LHS - RHS| with the real part reduced mod 4*pi^2
    """
    if which not in COLLAPSED:
        raise ValueError(f"unknown collapsed octahedron identity {which}")
    if sample.missing != COLLAPSED[which][0]:
        raise DegenerateSample(f"form {which} needs t{COLLAPSED[which][0]} collapsed")
    lhs, rhs = _collapsed_sides(sample, which)
    return _residual(lhs, rhs)


def imaginary_residual(sample, which):
    """Residual of the imaginary part alone, which carries no 4*pi^2 ambiguity."""
    if which in FULL_FORMS:
        lhs, rhs = _full_sides(sample, which)
    else:
        lhs, rhs = _collapsed_sides(sample, which)
    return abs((lhs - rhs).imag)


def volume_residual(sample):
    """|sum D(t) - sum D(u)| over the present shapes."""
    from ..numerics import bloch_wigner
    return abs(sum(bloch_wigner(v) for v in sample.t.values()) - sum(bloch_wigner(v) for v in sample.u.values()))


def run_samples(forms, count, rng_seed, tol=1e-9, local=False):
    """
    Evaluate identities on random constrained samples.

    Args:
        forms (iterable): Identity numbers among 22..29
        count (int): Samples per identity
        rng_seed (int): Seed of the random generator
        local (bool): Draw around the calibration point instead of the whole annulus

    Returns:
        dict: Per-form sample count, max residual and failing samples
    """
    rng = np.random.default_rng(rng_seed)
    results = {}
    for form in forms:
        missing = COLLAPSED[form][0] if form in COLLAPSED else None
        check = check_lemma5_collapsed if missing else check_lemma5
        center = None
        if local:
            center = 1j if missing is None else complex(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))
        worst = 0.0
        failures = []
        skipped = 0
        for _ in range(count):
            try:
                sample = random_sample(rng, missing=missing, center=center, spread=0.2 if local else None)
                residual = check(sample, form)
            except DegenerateSample:
                skipped += 1
                continue
            worst = max(worst, residual)
            if residual > tol and len(failures) < 10:
                failures.append({'sample': sample.to_dict(), 'residual': residual})
        results[str(form)] = {
            'samples': count - skipped,
            'skipped': skipped,
            'max_residual': worst,
            'failures': failures,
        }
        logger.info(f"Identity {form}: {count - skipped} samples, max residual {worst:.3e}")
    return results


def calibration_residuals():
    """Residuals of every form at its calibration point; all are within EPS_FN."""
    residuals = {}
    full = calibration_sample()
    for form in FULL_FORMS:
        residuals[str(form)] = check_lemma5(full, form)
    for form in COLLAPSED_FORMS:
        residuals[str(form)] = check_lemma5_collapsed(collapsed_calibration_sample(form), form)
    worst = max(residuals.values())
    if worst > EPS_FN:
        logger.warning(f"Calibration residual {worst:.3e} exceeds {EPS_FN}")
    return residuals
