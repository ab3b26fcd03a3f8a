"""Exact Laurent-polynomial arithmetic, determinants and root isolation."""

from .matrix import (
    LaurentMatrix,
    char_matrix,
    det,
    det_bareiss,
    det_cofactor,
    det_leibniz,
    det_quotient,
    det_sparse,
)
from .poly import (
    LaurentPoly,
    NonExactDivision,
    SubstitutionError,
    equivalent_up_to_units,
    exact_div,
    format_text,
    invert_variables,
    inverse_substitution,
    normalize,
    parse_poly,
    substitute,
)
from .unipoly import (
    NoRealRoot,
    UniPoly,
    count_real_roots,
    int_charpoly,
    largest_real_root,
    specialize,
)

__all__ = [
    "LaurentMatrix",
    "LaurentPoly",
    "NoRealRoot",
    "NonExactDivision",
    "SubstitutionError",
    "UniPoly",
    "char_matrix",
    "count_real_roots",
    "det",
    "det_bareiss",
    "det_cofactor",
    "det_leibniz",
    "det_quotient",
    "det_sparse",
    "equivalent_up_to_units",
    "exact_div",
    "int_charpoly",
    "format_text",
    "invert_variables",
    "inverse_substitution",
    "largest_real_root",
    "normalize",
    "parse_poly",
    "specialize",
    "substitute",
]
