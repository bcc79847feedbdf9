"""Exact arithmetic and ideal arithmetic for the supported ring tower."""

from .arith import (
    UnsupportedRing,
    add,
    associates,
    exact_divide,
    gcd,
    is_nonzerodivisor,
    is_unit,
    is_zero,
    lcm,
    mul,
    neg,
    normalize_associate,
    squarefree_part,
    sub,
)
from .base import RingElement, RingKind, RingSpec, SpecMismatch
from .ideal import (
    DEFAULT_RADICAL_BOUND,
    Ideal,
    RadicalInconclusive,
    ideal_contains_one,
    ideal_equals,
    ideal_membership,
    ideal_product,
    ideal_quotient,
    ideal_sum,
    principal,
    radical_membership,
    unit_ideal,
)

__all__ = [
    "DEFAULT_RADICAL_BOUND",
    "Ideal",
    "RadicalInconclusive",
    "RingElement",
    "RingKind",
    "RingSpec",
    "SpecMismatch",
    "UnsupportedRing",
    "add",
    "associates",
    "exact_divide",
    "gcd",
    "ideal_contains_one",
    "ideal_equals",
    "ideal_membership",
    "ideal_product",
    "ideal_quotient",
    "ideal_sum",
    "is_nonzerodivisor",
    "is_unit",
    "is_zero",
    "lcm",
    "mul",
    "neg",
    "normalize_associate",
    "principal",
    "radical_membership",
    "squarefree_part",
    "sub",
    "unit_ideal",
]
