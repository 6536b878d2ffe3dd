# optlim identities package
from .lemma5 import (
    OctahedronSample, random_sample, calibration_sample, collapsed_calibration_sample,
    check_lemma5, check_lemma5_collapsed, imaginary_residual, volume_residual,
)
from .remaining import remaining_term, vertex_residuals, check_cancellation, theorem_residual
from .suites import SUITES, run_suite

__all__ = [
    "OctahedronSample", "random_sample", "calibration_sample", "collapsed_calibration_sample",
    "check_lemma5", "check_lemma5_collapsed", "imaginary_residual", "volume_residual",
    "remaining_term", "vertex_residuals", "check_cancellation", "theorem_residual",
    "SUITES", "run_suite",
]
