from .field import FieldElem, FactorList, PrimeField, UniPoly, tau, uni_factor, uni_gcd
from .groebner import (
    Ideal,
    bracket_power,
    buchberger,
    colon_element,
    colon_ideal,
    contract_to_t,
    eliminate,
    ideal_equal,
    intersect,
    member,
    normal_form,
    saturate,
)
from .multipoly import MonomialOrder, MultiPoly, PolyRing, linear_substitute
from .parser import parse_poly
from .snf import ElementaryDivisors, PolyMatrix, mult_matrix, smith_normal_form

__all__ = [
    "ElementaryDivisors",
    "FactorList",
    "FieldElem",
    "Ideal",
    "MonomialOrder",
    "MultiPoly",
    "PolyMatrix",
    "PolyRing",
    "PrimeField",
    "UniPoly",
    "bracket_power",
    "buchberger",
    "colon_element",
    "colon_ideal",
    "contract_to_t",
    "eliminate",
    "ideal_equal",
    "intersect",
    "linear_substitute",
    "member",
    "mult_matrix",
    "normal_form",
    "parse_poly",
    "saturate",
    "smith_normal_form",
    "tau",
    "uni_factor",
    "uni_gcd",
]
