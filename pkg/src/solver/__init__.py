# optlim solver package
from .newton import ShapeSystem, FunctionSystem, newton, make_seeds, deduplicate, canonical_order, solve
from .solutions import Solution, SolutionSet, classify, from_values, residual_of, require_geometric
from .convert import convert_z_to_w, convert_w_to_z, region_seeds, thurston_from_yokota, yokota_from_thurston

__all__ = [
    "ShapeSystem", "FunctionSystem", "newton", "make_seeds", "deduplicate", "canonical_order", "solve",
    "Solution", "SolutionSet", "classify", "from_values", "residual_of", "require_geometric",
    "convert_z_to_w", "convert_w_to_z", "region_seeds", "thurston_from_yokota", "yokota_from_thurston",
]
