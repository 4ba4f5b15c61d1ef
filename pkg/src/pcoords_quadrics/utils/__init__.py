from .rationals import (
    RationalJsonEncoder,
    parse_domain,
    parse_interval,
    parse_rational,
    parse_rational_list,
)
