"""Exact arithmetic in a real number field Q(delta)."""

from .field import (
    Box,
    FieldElement,
    NumberField,
    PisotReport,
    PisotVerdict,
    format_coeffs,
    format_poly,
    is_pisot_of_degree_d,
    make_field,
    max_norm_floor,
)

__all__ = [
    "Box",
    "FieldElement",
    "NumberField",
    "PisotReport",
    "PisotVerdict",
    "format_coeffs",
    "format_poly",
    "is_pisot_of_degree_d",
    "make_field",
    "max_norm_floor",
]
