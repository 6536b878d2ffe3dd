# optlim numerics package
from .functions import clog, dilog, bloch_wigner, shape_triple, PI2, PI2_6
from .reduction import nearest_multiple, reduce_mod, reduce_real_part, snap_two_pi_i

__all__ = [
    "clog", "dilog", "bloch_wigner", "shape_triple", "PI2", "PI2_6",
    "nearest_multiple", "reduce_mod", "reduce_real_part", "snap_two_pi_i",
]
