"""Exact Ext groups, projective resolutions and rigidity labels for persistence modules over finite posets."""

from .exactfield import ExactMatrix, FieldSpec
from .ext import (
    ExtReport,
    euler_mobius_check,
    ext1_deformation_complex,
    ext_dims,
    mitchell_check,
    rigidity_report,
)
from .pmodule import (
    ModuleMorphism,
    PModule,
    diagonal,
    direct_sum,
    hom_basis,
    hook,
    interval_full,
    kernel,
    projective,
    simple,
    top_dims,
    trivial_ones,
    validate,
)
from .poset import OrderComplex, Poset, from_covers, grid, hasse_paths, mobius, nerve_cohomology_dims, order_complex
from .resolution import (
    ProjectiveResolution,
    global_dimension,
    minimal_resolution,
    projective_cover,
    projective_dimension,
)

__version__ = "0.1.0"
