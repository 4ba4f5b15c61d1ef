from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Optional, Tuple

from pcoords_quadrics.errors import UsageError
from pcoords_quadrics.models.duality import ProjectivePoint, PSQTriple
from pcoords_quadrics.models.surface import AxisSpacing, QuadricSurface
from pcoords_quadrics.polycore import (
    CONIC_NAMES,
    HOMOGENEOUS_NAMES,
    NumericPolynomial,
    Polynomial,
    default_names,
    format_polynomial,
)

# Variable order of the elimination system: x1, x2, x3 then eta, xi, psi.
SYSTEM_NAMES: Tuple[str, ...] = ("x", "y", "z") + HOMOGENEOUS_NAMES
X_VARS = (0, 1, 2)
ETA, XI, PSI = 3, 4, 5


@dataclass(frozen=True)
class EliminationSystem:
    """
    The three equations linear in (x1, x2, x3) whose solution parameterizes
    the contact curve by its dual point (eta : xi : psi).

    eqA = eta*Q - psi*P and eqB = xi*Q - psi*S restate the dual point
    conditions; eqC is the contact determinant with eta, xi, psi standing in
    for P, S, Q.
    """

    surface: QuadricSurface
    spacing: AxisSpacing
    psq: PSQTriple
    eqA: Polynomial
    eqB: Polynomial
    eqC: Polynomial

    def equations(self) -> Tuple[Polynomial, Polynomial, Polynomial]:
        return (self.eqA, self.eqB, self.eqC)

    def asdict(self) -> Dict:
        return {
            "surface": self.surface.text,
            "spacing": self.spacing.asdict(),
            "psq": self.psq.asdict(),
            "eqA": format_polynomial(self.eqA, SYSTEM_NAMES),
            "eqB": format_polynomial(self.eqB, SYSTEM_NAMES),
            "eqC": format_polynomial(self.eqC, SYSTEM_NAMES),
        }


@dataclass(frozen=True)
class IdealFactor:
    """A factor stripped from the boundary numerator, with its multiplicity."""

    factor: Polynomial
    multiplicity: int

    @property
    def at_infinity(self) -> bool:
        return self.factor == Polynomial.variable(self.factor.nvars, self.factor.nvars - 1)

    def asdict(self) -> Dict:
        return {
            "factor": format_polynomial(self.factor, HOMOGENEOUS_NAMES),
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True)
class BoundaryCurve:
    """
    Result of the boundary elimination for one surface and spacing.

    For quadrics `gamma_bar` is the normalized boundary conic in (x, y) and
    `homogeneous` the same curve in (eta, xi, psi) before dehomogenization.
    A plane yields `degenerate == "plane"` and its single indexed point.
    """

    surface: QuadricSurface
    spacing: AxisSpacing
    gamma_bar: Optional[Polynomial] = None
    sigma_prime: Optional[Polynomial] = None
    homogeneous: Optional[Polynomial] = None
    ideal_factors: Tuple[IdealFactor, ...] = ()
    degenerate: Optional[str] = None
    indexed_point: Optional[ProjectivePoint] = None

    def __post_init__(self):
        if self.gamma_bar is None and self.degenerate is None:
            raise UsageError("A boundary record needs either a conic or a degenerate marker")
        if self.gamma_bar is not None and self.gamma_bar.total_degree > 2:
            raise UsageError(f"Boundary of degree {self.gamma_bar.total_degree} exceeds two")

    @property
    def text(self) -> Optional[str]:
        if self.gamma_bar is None:
            return None
        return format_polynomial(self.gamma_bar, CONIC_NAMES)

    @property
    def sigma_prime_text(self) -> Optional[str]:
        if self.sigma_prime is None:
            return None
        return format_polynomial(self.sigma_prime, default_names(self.sigma_prime.nvars))

    @property
    def gamma_preimage(self) -> Tuple[Polynomial, Optional[Polynomial]]:
        """The pair (F, sigma') whose common zeros form the contact curve."""
        return (self.surface.F, self.sigma_prime)

    @property
    def discriminant(self) -> Optional[Fraction]:
        """B^2 - 4AC of the quadratic part A x^2 + B x y + C y^2."""
        if self.gamma_bar is None:
            return None
        a = self.gamma_bar.coefficient((2, 0))
        b = self.gamma_bar.coefficient((1, 1))
        c = self.gamma_bar.coefficient((0, 2))
        return b * b - 4 * a * c

    @cached_property
    def numeric(self) -> NumericPolynomial:
        if self.gamma_bar is None:
            raise UsageError("Degenerate boundary has no conic to evaluate")
        return self.gamma_bar.to_numeric()

    @cached_property
    def numeric_gradient(self) -> Tuple[NumericPolynomial, NumericPolynomial]:
        if self.gamma_bar is None:
            raise UsageError("Degenerate boundary has no conic to evaluate")
        dx, dy = self.gamma_bar.gradient()
        return (dx.to_numeric(), dy.to_numeric())

    def asdict(self) -> Dict:
        return {
            "surface": self.surface.text,
            "spacing": self.spacing.asdict(),
            "boundary": self.text,
            "sigma_prime": self.sigma_prime_text,
            "ideal_factors": [factor.asdict() for factor in self.ideal_factors],
            "gamma": {"F": self.surface.text, "sigma_prime": self.sigma_prime_text},
            "homogeneous": (
                format_polynomial(self.homogeneous, HOMOGENEOUS_NAMES)
                if self.homogeneous is not None
                else None
            ),
            "discriminant": self.discriminant,
            "degenerate": self.degenerate,
            "indexed_point": self.indexed_point.asdict() if self.indexed_point else None,
        }
