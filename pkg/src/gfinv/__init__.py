"""Geometric moment invariants built from dot-product and determinant
generating functions."""

from .algebra import (
    CoreSum,
    GFFactor,
    Group,
    InvariantCore,
    MomentPolynomial,
    canonicalize,
    degree_order,
    differentiate,
    evaluate,
    normalization_exponent,
    parse_core,
    parse_polynomial,
    translate,
)
from .moments import (
    MomentVector,
    WeightedPointSet,
    central_moments,
    centroid,
    raw_moments,
)

__version__ = "0.1.0"
