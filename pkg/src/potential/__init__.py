# optlim potential package
from .monomial import Monomial, ShapeProduct
from .function import (
    PotentialFunction, evaluate, log_derivative, shape_product_form, flattened, local_flattened,
)
from .builder import build_V, build_W, crossing_function, vertex_potentials, corner_regions

__all__ = [
    "Monomial", "ShapeProduct", "PotentialFunction", "evaluate", "log_derivative",
    "shape_product_form", "flattened", "local_flattened", "build_V", "build_W",
    "crossing_function", "vertex_potentials", "corner_regions",
]
