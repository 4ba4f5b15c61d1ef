from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from pcoords_quadrics.errors import IndivisibleError, UsageError

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]
Term = Tuple[Exponent, Fraction]


def term_order_key(exponent: Exponent) -> Tuple[int, Exponent]:
    """Graded lexicographic key: total degree first, then lex on variable index."""
    return (sum(exponent), exponent)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Polynomial:
    """
    Multivariate polynomial over the rationals with a fixed variable count.

    Terms map exponent vectors to nonzero Fraction coefficients. Instances are
    treated as immutable values; every operation returns a new polynomial.
    Operations between polynomials of different arity raise UsageError.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(
        self, nvars: int, terms: Optional[Mapping[Exponent, Scalar]] = None
    ):
        if nvars < 0:
            raise UsageError(f"Variable count must be non-negative, got {nvars}")
        cleaned: Dict[Exponent, Fraction] = {}
        for exponent, coefficient in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != nvars:
                raise UsageError(
                    f"Exponent {exponent} does not match variable count {nvars}"
                )
            if any(e < 0 for e in exponent):
                raise UsageError(f"Negative exponent in {exponent}")
            value = cleaned.get(exponent, Fraction(0)) + Fraction(coefficient)
            if value == 0:
                cleaned.pop(exponent, None)
            else:
                cleaned[exponent] = value
        self.nvars = nvars
        self._terms = cleaned

    @classmethod
    def _from_clean(cls, nvars: int, terms: Dict[Exponent, Fraction]) -> Polynomial:
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly._terms = terms
        return poly

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls._from_clean(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> Polynomial:
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> Polynomial:
        if not 0 <= index < nvars:
            raise UsageError(f"Variable index {index} out of range for {nvars} variables")
        exponent = tuple(1 if i == index else 0 for i in range(nvars))
        return cls._from_clean(nvars, {exponent: Fraction(1)})

    # -- inspection -------------------------------------------------------

    def terms(self) -> List[Term]:
        """Terms in canonical order, leading term first."""
        return sorted(
            self._terms.items(), key=lambda item: term_order_key(item[0]), reverse=True
        )

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    @property
    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    @property
    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, var: int) -> int:
        self._check_index(var)
        if not self._terms:
            return -1
        return max(e[var] for e in self._terms)

    def variables(self) -> List[int]:
        """Indices of the variables that actually occur."""
        return sorted({i for e in self._terms for i, k in enumerate(e) if k})

    @property
    def leading_term(self) -> Term:
        if not self._terms:
            raise UsageError("The zero polynomial has no leading term")
        exponent = max(self._terms, key=term_order_key)
        return exponent, self._terms[exponent]

    @property
    def leading_coefficient(self) -> Fraction:
        return self.leading_term[1]

    def homogeneous_part(self, degree: int) -> Polynomial:
        return Polynomial._from_clean(
            self.nvars, {e: c for e, c in self._terms.items() if sum(e) == degree}
        )

    # -- ring operations --------------------------------------------------

    def _check_index(self, var: int) -> None:
        if not 0 <= var < self.nvars:
            raise UsageError(
                f"Variable index {var} out of range for {self.nvars} variables"
            )

    def _coerce(self, other: Union[Polynomial, Scalar]) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise UsageError(
                    f"Variable count mismatch: {self.nvars} vs {other.nvars}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        raise TypeError(f"Cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other: Union[Polynomial, Scalar]) -> Polynomial:
        other = self._coerce(other)
        result = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            value = result.get(exponent, Fraction(0)) + coefficient
            if value == 0:
                result.pop(exponent, None)
            else:
                result[exponent] = value
        return Polynomial._from_clean(self.nvars, result)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._from_clean(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Union[Polynomial, Scalar]) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> Polynomial:
        return self._coerce(other) - self

    def __mul__(self, other: Union[Polynomial, Scalar]) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        result: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = tuple(a + b for a, b in zip(e1, e2))
                result[exponent] = result.get(exponent, Fraction(0)) + c1 * c2
        return Polynomial._from_clean(
            self.nvars, {e: c for e, c in result.items() if c != 0}
        )

    __rmul__ = __mul__

    def __pow__(self, power: int) -> Polynomial:
        if not isinstance(power, int) or power < 0:
            raise UsageError(f"Polynomial powers must be non-negative integers, got {power}")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def scale(self, factor: Scalar) -> Polynomial:
        factor = Fraction(factor)
        if factor == 0:
            return Polynomial.zero(self.nvars)
        return Polynomial._from_clean(
            self.nvars, {e: c * factor for e, c in self._terms.items()}
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        from pcoords_quadrics.polycore.formatting import default_names, format_polynomial

        return f"Polynomial({format_polynomial(self, default_names(self.nvars))!r})"

    # -- calculus and evaluation ------------------------------------------

    def partial_derivative(self, var: int) -> Polynomial:
        self._check_index(var)
        result: Dict[Exponent, Fraction] = {}
        for exponent, coefficient in self._terms.items():
            power = exponent[var]
            if power == 0:
                continue
            lowered = exponent[:var] + (power - 1,) + exponent[var + 1:]
            result[lowered] = coefficient * power
        return Polynomial._from_clean(self.nvars, result)

    def gradient(self) -> Tuple[Polynomial, ...]:
        return tuple(self.partial_derivative(i) for i in range(self.nvars))

    def evaluate(self, point: Sequence[Union[Scalar, float]]) -> Union[Fraction, float]:
        """
        Evaluate by nested Horner accumulation, one variable at a time.

        Exact when the point holds ints or Fractions.
        """
        if len(point) != self.nvars:
            raise UsageError(
                f"Point has {len(point)} coordinates, polynomial has {self.nvars} variables"
            )
        if not self._terms:
            return Fraction(0)
        return _horner(list(self._terms.items()), point, 0)

    def to_numeric(self) -> NumericPolynomial:
        return NumericPolynomial(self)

    # -- division and normalization ---------------------------------------

    def exact_divide(self, divisor: Polynomial) -> Polynomial:
        """
        Return r with self == divisor * r, or raise IndivisibleError.

        Args:
            divisor: Nonzero polynomial of the same arity

        Raises:
            UsageError: divisor is zero or of a different arity
            IndivisibleError: the division leaves a remainder
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero:
            raise UsageError("Division by the zero polynomial")
        lead_exponent, lead_coefficient = divisor.leading_term
        remainder = dict(self._terms)
        quotient: Dict[Exponent, Fraction] = {}
        while remainder:
            r_exponent = max(remainder, key=term_order_key)
            if any(a < b for a, b in zip(r_exponent, lead_exponent)):
                raise IndivisibleError(f"{self!r} is not divisible by {divisor!r}")
            q_exponent = tuple(a - b for a, b in zip(r_exponent, lead_exponent))
            q_coefficient = remainder[r_exponent] / lead_coefficient
            quotient[q_exponent] = q_coefficient
            for d_exponent, d_coefficient in divisor._terms.items():
                exponent = tuple(a + b for a, b in zip(q_exponent, d_exponent))
                value = remainder.get(exponent, Fraction(0)) - q_coefficient * d_coefficient
                if value == 0:
                    remainder.pop(exponent, None)
                else:
                    remainder[exponent] = value
        return Polynomial._from_clean(self.nvars, quotient)

    def divides(self, other: Polynomial) -> bool:
        try:
            other.exact_divide(self)
        except IndivisibleError:
            return False
        return True

    def content(self) -> Fraction:
        """Positive rational g such that self / g has coprime integer coefficients."""
        if not self._terms:
            return Fraction(1)
        numerator_gcd = 0
        denominator_lcm = 1
        for coefficient in self._terms.values():
            numerator_gcd = gcd(numerator_gcd, abs(coefficient.numerator))
            denominator_lcm = _lcm(denominator_lcm, coefficient.denominator)
        return Fraction(numerator_gcd, denominator_lcm)

    def normalize(self) -> Polynomial:
        """Primitive integer form with a positive leading coefficient."""
        if not self._terms:
            return self
        factor = self.content()
        if self.leading_coefficient < 0:
            factor = -factor
        return self.scale(1 / factor)

    # -- variable bookkeeping ---------------------------------------------

    def rename(self, mapping: Sequence[int], nvars: int) -> Polynomial:
        """
        Move old variable i to new index mapping[i] in a polynomial of `nvars` variables.
        """
        if len(mapping) != self.nvars:
            raise UsageError("Rename mapping must cover every variable")
        result: Dict[Exponent, Fraction] = {}
        for exponent, coefficient in self._terms.items():
            moved = [0] * nvars
            for old, power in enumerate(exponent):
                if power:
                    moved[mapping[old]] += power
            key = tuple(moved)
            result[key] = result.get(key, Fraction(0)) + coefficient
        return Polynomial(nvars, result)

    def homogenize(self) -> Polynomial:
        """Homogenize with a new trailing variable."""
        degree = max(self.total_degree, 0)
        return Polynomial._from_clean(
            self.nvars + 1,
            {e + (degree - sum(e),): c for e, c in self._terms.items()},
        )


def _horner(
    terms: List[Term], point: Sequence[Union[Scalar, float]], var: int
) -> Union[Fraction, float]:
    if var == len(point):
        return sum((c for _, c in terms), Fraction(0))
    groups: Dict[int, List[Term]] = {}
    for exponent, coefficient in terms:
        groups.setdefault(exponent[var], []).append((exponent, coefficient))
    accumulator: Union[Fraction, float] = Fraction(0)
    for power in range(max(groups), -1, -1):
        accumulator = accumulator * point[var]
        if power in groups:
            accumulator = accumulator + _horner(groups[power], point, var + 1)
    return accumulator


class NumericPolynomial:
    """
    Float64 evaluator compiled from a Polynomial, vectorized over rows of points.
    """

    def __init__(self, polynomial: Polynomial):
        terms = polynomial.terms()
        self.nvars = polynomial.nvars
        self.exponents = np.array(
            [e for e, _ in terms], dtype=np.int64
        ).reshape(len(terms), self.nvars)
        self.coefficients = np.array([float(c) for _, c in terms], dtype=np.float64)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        values = np.atleast_2d(np.asarray(points, dtype=np.float64))
        if values.shape[1] != self.nvars:
            raise UsageError(
                f"Points have {values.shape[1]} coordinates, polynomial has {self.nvars} variables"
            )
        if not len(self.coefficients):
            return np.zeros(values.shape[0])
        monomials = np.prod(values[:, None, :] ** self.exponents[None, :, :], axis=2)
        return monomials @ self.coefficients

    def at(self, point: Iterable[float]) -> float:
        return float(self(np.asarray(list(point), dtype=np.float64))[0])
