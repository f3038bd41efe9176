"""Exact symbolic engine for skew PBW extensions.

Validates presentations, certifies the standard-monomial basis by overlap
resolution, computes normal forms and products, extracts associated graded
and iterated-Ore structure, reports transfer properties and the
Gelfand-Kirillov dimension, and parametrizes point modules of finitely graded
examples.  All arithmetic is exact.
"""

__version__ = "0.1.0"

from .errors import SkewPbwError
from .maps import DerivMap, EndoMap, validate_maps
from .polys import Poly
from .presentation import (
    Presentation,
    ShapeReport,
    Tail,
    classify_shape,
    emit,
    parse,
    specialize,
    validate_axioms,
)
from .rewrite import (
    Element,
    check_pbw_consistency,
    multiply,
    normal_form,
    parse_element,
    push_coeff,
    swap_reduce,
)
from .scalars import ParamScalar

__all__ = [
    "__version__",
    "SkewPbwError",
    "ParamScalar",
    "Poly",
    "EndoMap",
    "DerivMap",
    "validate_maps",
    "Presentation",
    "Tail",
    "ShapeReport",
    "parse",
    "emit",
    "validate_axioms",
    "classify_shape",
    "specialize",
    "Element",
    "normal_form",
    "multiply",
    "push_coeff",
    "swap_reduce",
    "parse_element",
    "check_pbw_consistency",
]
