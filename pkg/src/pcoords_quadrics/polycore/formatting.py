from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from pcoords_quadrics.errors import UsageError
from pcoords_quadrics.polycore.polynomial import Polynomial

ALIAS_NAMES: Tuple[str, ...] = ("x", "y", "z")
CONIC_NAMES: Tuple[str, ...] = ("x", "y")
HOMOGENEOUS_NAMES: Tuple[str, ...] = ("eta", "xi", "psi")


def default_names(nvars: int) -> Tuple[str, ...]:
    """x, y, z for three variables, x1..xn otherwise."""
    if nvars == 3:
        return ALIAS_NAMES
    if nvars == 2:
        return CONIC_NAMES
    return tuple(f"x{i + 1}" for i in range(nvars))


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _monomial(exponent: Sequence[int], names: Sequence[str]) -> str:
    factors: List[str] = []
    for name, power in zip(names, exponent):
        if power == 1:
            factors.append(name)
        elif power > 1:
            factors.append(f"{name}^{power}")
    return "*".join(factors)


def format_polynomial(polynomial: Polynomial, names: Sequence[str]) -> str:
    """
    Canonical text of a polynomial: leading term first, `^` powers, `*` products.

    Args:
        polynomial: Polynomial to render
        names: One display name per variable

    Returns:
        Text such as "x^2 - 4*x*y + y^2 + 1"; "0" for the zero polynomial
    """
    if len(names) < polynomial.nvars:
        raise UsageError(
            f"{len(names)} names given for a polynomial in {polynomial.nvars} variables"
        )
    if polynomial.is_zero:
        return "0"

    pieces: List[str] = []
    for index, (exponent, coefficient) in enumerate(polynomial.terms()):
        magnitude = abs(coefficient)
        monomial = _monomial(exponent, names)
        if not monomial:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{format_rational(magnitude)}*{monomial}"

        if index == 0:
            pieces.append(f"-{body}" if coefficient < 0 else body)
        else:
            pieces.append(f"- {body}" if coefficient < 0 else f"+ {body}")
    return " ".join(pieces)
