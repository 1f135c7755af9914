from .field import FieldCtx, FieldElement, gf, gf_q, ff_arith, ff_sqrt, ff_trace, ff_as_solve, MODULI, embed, embedding_images
from .poly import Poly, is_irreducible
from .ratfunc import RatFunc, rf_canonical, rf_power_test, max_power_exponent
from .parse import parse_ratfunc
from .places import (
    Place,
    Residue,
    places_up_to_degree,
    monic_irreducibles,
    residue_field,
    rf_eval_at_place,
    valuation,
)

__all__ = [
    "FieldCtx", "FieldElement", "gf", "gf_q", "ff_arith", "ff_sqrt", "ff_trace", "ff_as_solve",
    "MODULI", "embed", "embedding_images", "Poly", "is_irreducible", "RatFunc", "rf_canonical", "rf_power_test",
    "max_power_exponent", "parse_ratfunc", "Place", "Residue", "places_up_to_degree",
    "monic_irreducibles", "residue_field", "rf_eval_at_place", "valuation",
]
