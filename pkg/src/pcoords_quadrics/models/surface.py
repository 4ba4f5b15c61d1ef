from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Tuple

from pcoords_quadrics.errors import SurfaceParseError, UnsupportedDegreeError, UsageError
from pcoords_quadrics.polycore.formatting import default_names, format_polynomial, format_rational
from pcoords_quadrics.polycore import NumericPolynomial, Polynomial
from pcoords_quadrics.utils import parse_rational, parse_rational_list

MIN_VARIABLES = 3


@dataclass(frozen=True)
class QuadricSurface:
    """
    An algebraic surface F(x1..xn) = 0 of total degree one or two.

    F is kept exactly as given; `parse_surface` hands in the normalized form.
    Degree-1 surfaces are accepted and flagged through `is_plane`.
    """

    F: Polynomial

    def __post_init__(self):
        if self.F.nvars < MIN_VARIABLES:
            raise UsageError(
                f"Surfaces need at least {MIN_VARIABLES} variables, got {self.F.nvars}"
            )
        degree = self.F.total_degree
        if degree > 2:
            raise UnsupportedDegreeError(f"unsupported degree {degree}")
        if degree < 1:
            raise SurfaceParseError("degenerate equation: no variable survives in lhs - rhs")

    @property
    def nvars(self) -> int:
        return self.F.nvars

    @property
    def degree(self) -> int:
        return self.F.total_degree

    @property
    def is_plane(self) -> bool:
        return self.degree == 1

    @property
    def names(self) -> Tuple[str, ...]:
        return default_names(self.nvars)

    @property
    def text(self) -> str:
        return format_polynomial(self.F, self.names)

    @cached_property
    def gradient(self) -> Tuple[Polynomial, ...]:
        return self.F.gradient()

    @cached_property
    def numeric(self) -> NumericPolynomial:
        return self.F.to_numeric()

    @cached_property
    def numeric_gradient(self) -> Tuple[NumericPolynomial, ...]:
        return tuple(partial.to_numeric() for partial in self.gradient)

    def normalized(self) -> QuadricSurface:
        return QuadricSurface(self.F.normalize())

    def same_surface(self, other: QuadricSurface) -> bool:
        """True when both describe the same zero set up to a nonzero scalar."""
        return self.F.normalize() == other.F.normalize()

    def __str__(self) -> str:
        return f"{self.text} = 0"

    @staticmethod
    def from_dict(data: Dict) -> "QuadricSurface":
        from pcoords_quadrics.parsing.equation_parser import parse_surface

        return parse_surface(data["F"], data.get("nvars"))

    def asdict(self) -> Dict:
        return {"F": self.text, "nvars": self.nvars}


@dataclass(frozen=True)
class AxisSpacing:
    """
    Horizontal positions d1..dn of the parallel axes.

    The default is 0, 1, ..., n-1. All entries are exact rationals and, for
    more than one axis, not all equal.
    """

    d: Tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(parse_rational(value) for value in self.d)
        if not values:
            raise UsageError("Axis spacing needs at least one position")
        if len(values) > 1 and len(set(values)) == 1:
            raise UsageError(f"Axis positions must not all be equal: {values[0]}")
        object.__setattr__(self, "d", values)

    @staticmethod
    def default(nvars: int) -> "AxisSpacing":
        return AxisSpacing(tuple(Fraction(i) for i in range(nvars)))

    @staticmethod
    def parse(text: str) -> "AxisSpacing":
        return AxisSpacing(tuple(parse_rational_list(text)))

    @staticmethod
    def resolve(spacing: Optional["AxisSpacing"], nvars: int) -> "AxisSpacing":
        """Default spacing when none is given, otherwise the checked spacing."""
        if spacing is None:
            return AxisSpacing.default(nvars)
        spacing.check_arity(nvars)
        return spacing

    def __len__(self) -> int:
        return len(self.d)

    def __iter__(self):
        return iter(self.d)

    def scaled(self, factor) -> AxisSpacing:
        factor = parse_rational(factor)
        if factor == 0:
            raise UsageError("Spacing scale factor must be nonzero")
        return AxisSpacing(tuple(value * factor for value in self.d))

    def check_arity(self, nvars: int) -> None:
        if len(self.d) != nvars:
            raise UsageError(f"Spacing has {len(self.d)} positions, surface has {nvars} variables")

    def as_floats(self) -> List[float]:
        return [float(value) for value in self.d]

    def __str__(self) -> str:
        return ",".join(format_rational(value) for value in self.d)

    @staticmethod
    def from_dict(data: Iterable) -> "AxisSpacing":
        return AxisSpacing(tuple(parse_rational(value) for value in data))

    def asdict(self) -> List[Fraction]:
        return list(self.d)
