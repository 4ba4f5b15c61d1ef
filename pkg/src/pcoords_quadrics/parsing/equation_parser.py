from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from pcoords_quadrics.errors import (
    NonPolynomialError,
    SurfaceParseError,
    UnknownVariableError,
    UnsupportedDegreeError,
    UsageError,
)
from pcoords_quadrics.models.surface import QuadricSurface
from pcoords_quadrics.polycore.formatting import ALIAS_NAMES
from pcoords_quadrics.polycore import Polynomial

# Powers above this degree are rejected while parsing, before expansion.
MAX_INTERMEDIATE_DEGREE = 16

_TOKEN_PATTERN = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<number>\d+\.\d*|\.\d+|\d+)
    | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
    | (?P<power>\*\*|\^)
    | (?P<op>[-+*/=()])
    """,
    re.VERBOSE,
)
_INDEXED_NAME = re.compile(r"x([1-9][0-9]*)$")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    """
    Split equation text into number, name and operator tokens.

    `**` is accepted as a synonym for `^`. The list always ends with an
    `end` token positioned at the end of the text.
    """
    tokens: List[Token] = []
    position = 0
    while position < len(text):
        match = _TOKEN_PATTERN.match(text, position)
        if match is None:
            raise SurfaceParseError(f"unexpected character {text[position]!r}", position)
        kind = match.lastgroup or ""
        if kind == "power":
            tokens.append(Token("op", "^", position))
        elif kind != "ws":
            tokens.append(Token(kind, match.group(), position))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class EquationParser:
    """
    Recursive-descent parser producing exact polynomials.

    Grammar:
        equation := expr [ "=" expr ] END
        expr     := term { ("+" | "-") term }
        term     := unary { [ "*" | "/" ] unary }     juxtaposition multiplies
        unary    := ("+" | "-") unary | power
        power    := atom [ "^" integer ]
        atom     := number | name | "(" expr ")"

    Division is only allowed by nonzero constants.
    """

    def __init__(self, text: str, names: Sequence[str], tokens: Optional[List[Token]] = None):
        self.text = text
        self.tokens = tokens if tokens is not None else tokenize(text)
        self.index = 0
        self.nvars = len(names)
        self.lookup: Dict[str, int] = {name: i for i, name in enumerate(names)}

    def parse_equation(self) -> Polynomial:
        """Parse `lhs = rhs` (or a bare expression, meaning `expr = 0`) into lhs - rhs."""
        result = self._expr()
        if self._accept("="):
            result = result - self._expr()
        token = self._peek()
        if token.kind != "end":
            raise SurfaceParseError(f"unexpected {token.text!r}", token.position)
        return result

    # -- token helpers ----------------------------------------------------

    def _peek(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _accept(self, text: str) -> bool:
        token = self._peek()
        if token.kind == "op" and token.text == text:
            self.index += 1
            return True
        return False

    def _expect(self, text: str) -> Token:
        token = self._peek()
        if token.kind == "op" and token.text == text:
            return self._advance()
        found = token.text or "end of input"
        raise SurfaceParseError(f"expected {text!r} but found {found!r}", token.position)

    def _starts_atom(self, token: Token) -> bool:
        return token.kind in ("number", "name") or (token.kind == "op" and token.text == "(")

    # -- grammar rules ----------------------------------------------------

    def _expr(self) -> Polynomial:
        result = self._term()
        while True:
            if self._accept("+"):
                result = result + self._term()
            elif self._accept("-"):
                result = result - self._term()
            else:
                return result

    def _term(self) -> Polynomial:
        result = self._unary()
        while True:
            token = self._peek()
            if self._accept("*"):
                result = result * self._unary()
            elif self._accept("/"):
                divisor_token = self._peek()
                divisor = self._unary()
                if not divisor.is_constant:
                    raise NonPolynomialError(
                        "nonpolynomial input: division by a non-constant expression",
                        divisor_token.position,
                    )
                if divisor.is_zero:
                    raise SurfaceParseError("division by zero", divisor_token.position)
                result = result.scale(1 / divisor.constant_value)
            elif self._starts_atom(token):
                result = result * self._unary()
            else:
                return result

    def _unary(self) -> Polynomial:
        if self._accept("-"):
            return -self._unary()
        if self._accept("+"):
            return self._unary()
        return self._power()

    def _power(self) -> Polynomial:
        base = self._atom()
        if not self._accept("^"):
            return base
        token = self._peek()
        if token.kind == "op" and token.text == "(":
            self._advance()
            exponent_token = self._advance()
            self._expect(")")
        else:
            exponent_token = self._advance()
        if exponent_token.kind != "number" or not exponent_token.text.isdigit():
            raise NonPolynomialError(
                "nonpolynomial input: exponents must be non-negative integers",
                exponent_token.position,
            )
        exponent = int(exponent_token.text)
        if base.total_degree * exponent > MAX_INTERMEDIATE_DEGREE:
            raise UnsupportedDegreeError(
                f"unsupported degree {base.total_degree * exponent}", token.position
            )
        return base ** exponent

    def _atom(self) -> Polynomial:
        token = self._advance()
        if token.kind == "number":
            return Polynomial.constant(self.nvars, Fraction(token.text))
        if token.kind == "name":
            if token.text not in self.lookup:
                raise UnknownVariableError(f"unknown variable {token.text!r}", token.position)
            return Polynomial.variable(self.nvars, self.lookup[token.text])
        if token.kind == "op" and token.text == "(":
            inner = self._expr()
            self._expect(")")
            return inner
        found = token.text or "end of input"
        raise SurfaceParseError(f"unexpected {found!r}", token.position)


def _surface_names(tokens: List[Token], nvars: Optional[int]) -> Tuple[str, ...]:
    """Pick the variable naming scheme (x,y,z or x1..xn) used by the equation."""
    alias_seen: Optional[Token] = None
    indexed_seen: Optional[Token] = None
    highest = 0
    for token in tokens:
        if token.kind != "name":
            continue
        match = _INDEXED_NAME.match(token.text)
        if token.text in ALIAS_NAMES:
            alias_seen = alias_seen or token
        elif match:
            indexed_seen = indexed_seen or token
            highest = max(highest, int(match.group(1)))
        else:
            raise UnknownVariableError(f"unknown variable {token.text!r}", token.position)
        if alias_seen and indexed_seen:
            later = max(alias_seen, indexed_seen, key=lambda t: t.position)
            raise SurfaceParseError(
                "mixed variable naming: use either x, y, z or x1..xn", later.position
            )

    if alias_seen is not None:
        if nvars not in (None, 3):
            raise UsageError("the x, y, z names are only available for three variables")
        return ALIAS_NAMES
    count = max(highest, 3, nvars or 0)
    if nvars is not None and highest > nvars:
        raise UnknownVariableError(f"variable x{highest} exceeds the {nvars} declared variables")
    return tuple(f"x{i + 1}" for i in range(count))


def parse_surface(text: str, nvars: Optional[int] = None) -> QuadricSurface:
    """
    Parse an implicit or explicit surface equation into a QuadricSurface.

    F is lhs - rhs with coefficient denominators cleared and normalized to a
    primitive integer polynomial with positive leading coefficient.

    Args:
        text: Equation such as "z = -(x/2)^2 + (y/2)^2"
        nvars: Force the variable count for x1..xn input

    Returns:
        The parsed surface

    Raises:
        SurfaceParseError: syntax errors, with the offending position
        UnsupportedDegreeError: total degree above two
        NonPolynomialError: division by a non-constant expression
        UnknownVariableError: a name outside the accepted scheme
    """
    tokens = tokenize(text)
    names = _surface_names(tokens, nvars)
    polynomial = EquationParser(text, names, tokens).parse_equation()
    if polynomial.total_degree > 2:
        raise UnsupportedDegreeError(
            f"unsupported degree {polynomial.total_degree}: only surfaces of degree 1 or 2 are handled"
        )
    surface = QuadricSurface(polynomial.normalize())
    logging.info(f"Parsed surface {surface.text} = 0 in {surface.nvars} variables")
    return surface


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    """Parse an expression or equation over an explicit variable-name table, unnormalized."""
    return EquationParser(text, names).parse_equation()
