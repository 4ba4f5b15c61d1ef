from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

from pcoords_quadrics.errors import UsageError
from pcoords_quadrics.polycore import Polynomial, default_names, format_polynomial

Number = Union[int, Fraction, float]


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """
    A point (eta, xi, psi) of the projective plane; affine view (eta/psi, xi/psi).

    Components are exact rationals in symbolic work and floats in sampling.
    Equality is projective: scalar multiples compare equal.
    """

    eta: Number
    xi: Number
    psi: Number

    def __post_init__(self):
        if self.eta == 0 and self.xi == 0 and self.psi == 0:
            raise UsageError("(0, 0, 0) is not a projective point")

    def components(self) -> Tuple[Number, Number, Number]:
        return (self.eta, self.xi, self.psi)

    @property
    def is_ideal(self) -> bool:
        return self.psi == 0

    def affine(self) -> Tuple[Number, Number]:
        if self.is_ideal:
            raise UsageError(f"Ideal point {self} has no affine coordinates")
        return (self.eta / self.psi, self.xi / self.psi)

    def _cross(self, other: ProjectivePoint) -> Tuple[Number, Number, Number]:
        a, b = self.components(), other.components()
        return (
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return all(value == 0 for value in self._cross(other))

    def __hash__(self) -> int:
        components = self.components()
        pivot = next(value for value in components if value != 0)
        return hash(tuple(value / pivot for value in components))

    def isclose(self, other: ProjectivePoint, rel_tol: float = 1e-12) -> bool:
        """Projective equality in floating point: |a x b| <= rel_tol * |a| * |b|."""
        cross = math.sqrt(sum(float(value) ** 2 for value in self._cross(other)))
        norm_a = math.sqrt(sum(float(value) ** 2 for value in self.components()))
        norm_b = math.sqrt(sum(float(value) ** 2 for value in other.components()))
        return cross <= rel_tol * norm_a * norm_b

    def __str__(self) -> str:
        return f"({self.eta} : {self.xi} : {self.psi})"

    def asdict(self) -> Dict:
        return {"eta": self.eta, "xi": self.xi, "psi": self.psi}


@dataclass(frozen=True)
class PSQTriple:
    """P, S, Q polynomials in x1..xn; the dual point of x on the surface is (P : S : Q)."""

    P: Polynomial
    S: Polynomial
    Q: Polynomial

    def __iter__(self):
        return iter((self.P, self.S, self.Q))

    @property
    def nvars(self) -> int:
        return self.P.nvars

    def evaluate(self, point: Sequence[Number]) -> Tuple[Number, Number, Number]:
        return (self.P.evaluate(point), self.S.evaluate(point), self.Q.evaluate(point))

    def asdict(self) -> Dict:
        names = default_names(self.nvars)
        return {
            "P": format_polynomial(self.P, names),
            "S": format_polynomial(self.S, names),
            "Q": format_polynomial(self.Q, names),
        }


def format_float(value: float) -> str:
    return f"{float(value):.17g}"


@dataclass(frozen=True)
class DualSample:
    point: Tuple[float, ...]
    gradient: Tuple[float, ...]
    plane: Tuple[float, ...]
    dual: ProjectivePoint
    jac: float
    is_boundary: bool = False
    is_ideal: bool = False
    refined: bool = False

    @staticmethod
    def csv_header(nvars: int) -> List[str]:
        return [f"x{i + 1}" for i in range(nvars)] + [
            "eta",
            "xi",
            "psi",
            "jac",
            "is_boundary",
            "is_ideal",
        ]

    def csv_row(self) -> List[str]:
        values = [format_float(value) for value in self.point]
        values += [format_float(value) for value in self.dual.components()]
        values.append(format_float(self.jac))
        values.append("true" if self.is_boundary else "false")
        values.append("true" if self.is_ideal else "false")
        return values

    def asdict(self) -> Dict:
        return {
            "point": list(self.point),
            "gradient": list(self.gradient),
            "plane": list(self.plane),
            "dual": self.dual.asdict(),
            "jac": self.jac,
            "is_boundary": self.is_boundary,
            "is_ideal": self.is_ideal,
            "refined": self.refined,
        }
