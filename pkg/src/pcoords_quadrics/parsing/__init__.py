from pcoords_quadrics.polycore.formatting import default_names, format_polynomial, format_rational
from .equation_parser import EquationParser, parse_polynomial, parse_surface, tokenize
