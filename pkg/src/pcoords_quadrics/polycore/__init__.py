from .polynomial import Exponent, NumericPolynomial, Polynomial, term_order_key
from .rational_function import (
    RationalFunction,
    cancel_common_factors,
    factor_candidates,
    substitute,
)
from .formatting import (
    ALIAS_NAMES,
    CONIC_NAMES,
    HOMOGENEOUS_NAMES,
    default_names,
    format_polynomial,
    format_rational,
)
