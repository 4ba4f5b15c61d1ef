from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from pcoords_quadrics.errors import IndivisibleError, UsageError
from pcoords_quadrics.polycore.polynomial import Polynomial, Scalar


class RationalFunction:
    """
    Quotient of two polynomials over the same variables.

    The denominator is kept primitive with a positive leading coefficient; the
    numerator absorbs the scale. No gcd is taken: common factors are removed
    only by `cancel` against an explicit factor basis.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Union[Polynomial, None] = None):
        if den is None:
            den = Polynomial.constant(num.nvars, 1)
        if num.nvars != den.nvars:
            raise UsageError(
                f"Numerator and denominator arity differ: {num.nvars} vs {den.nvars}"
            )
        if den.is_zero:
            raise UsageError("Rational function with a zero denominator")
        if num.is_zero:
            den = Polynomial.constant(num.nvars, 1)
        factor = den.content()
        if den.leading_coefficient < 0:
            factor = -factor
        self.num = num.scale(1 / factor)
        self.den = den.scale(1 / factor)

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> RationalFunction:
        return cls(Polynomial.constant(nvars, value))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def _coerce(self, other: Union[RationalFunction, Polynomial, Scalar]) -> RationalFunction:
        if isinstance(other, RationalFunction):
            if other.nvars != self.nvars:
                raise UsageError(f"Variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(self.nvars, other)
        raise TypeError(f"Cannot combine RationalFunction with {type(other).__name__}")

    def __add__(self, other: Union[RationalFunction, Polynomial, Scalar]) -> RationalFunction:
        other = self._coerce(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: Union[RationalFunction, Polynomial, Scalar]) -> RationalFunction:
        return self + (-self._coerce(other))

    def __mul__(self, other: Union[RationalFunction, Polynomial, Scalar]) -> RationalFunction:
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Union[RationalFunction, Polynomial, Scalar]) -> RationalFunction:
        other = self._coerce(other)
        if other.is_zero:
            raise UsageError("Division by a zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, power: int) -> RationalFunction:
        return RationalFunction(self.num ** power, self.den ** power)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (Polynomial, int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.num * other.den == other.num * self.den
        )

    __hash__ = None  # type: ignore[assignment]

    def evaluate(self, point: Sequence[Union[Scalar, float]]) -> Union[Fraction, float]:
        denominator = self.den.evaluate(point)
        if denominator == 0:
            raise UsageError(f"Denominator vanishes at {tuple(point)}")
        return self.num.evaluate(point) / denominator

    def cancel(self, basis: Iterable[Polynomial]) -> RationalFunction:
        num, den = cancel_common_factors(self.num, self.den, basis)
        return RationalFunction(num, den)

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"


def _basis_key(p: Polynomial) -> Tuple:
    return (p.total_degree, len(p), tuple(p.terms()))


def factor_candidates(polynomials: Iterable[Polynomial]) -> List[Polynomial]:
    """
    Build a trial-division factor basis from known denominator polynomials.

    The basis holds every variable dividing one of the inputs, the normalized
    cores left after stripping those variables, and exact cofactors between
    basis members. Smallest factors come first.
    """
    basis: List[Polynomial] = []

    def add(candidate: Polynomial) -> bool:
        candidate = candidate.normalize()
        if candidate.total_degree >= 1 and candidate not in basis:
            basis.append(candidate)
            return True
        return False

    for polynomial in polynomials:
        if polynomial.is_zero or polynomial.is_constant:
            continue
        core = polynomial
        for var in range(polynomial.nvars):
            variable = Polynomial.variable(polynomial.nvars, var)
            while core.total_degree >= 1:
                try:
                    core = core.exact_divide(variable)
                except IndivisibleError:
                    break
                add(variable)
        add(core)

    changed = True
    while changed:
        changed = False
        for small in list(basis):
            for large in list(basis):
                if small.total_degree >= large.total_degree:
                    continue
                try:
                    cofactor = large.exact_divide(small)
                except IndivisibleError:
                    continue
                changed = add(cofactor) or changed

    basis.sort(key=_basis_key)
    return basis


def cancel_common_factors(
    num: Polynomial, den: Polynomial, basis: Iterable[Polynomial]
) -> Tuple[Polynomial, Polynomial]:
    """Divide out every basis factor that divides both polynomials, repeatedly."""
    if num.is_zero:
        return num, Polynomial.constant(den.nvars, 1)
    for factor in basis:
        while den.total_degree >= 1:
            try:
                reduced_num = num.exact_divide(factor)
                reduced_den = den.exact_divide(factor)
            except IndivisibleError:
                break
            num, den = reduced_num, reduced_den
    return num, den


def substitute(
    polynomial: Polynomial, bindings: Mapping[int, RationalFunction]
) -> RationalFunction:
    """
    Substitute rational functions for the variables of a polynomial.

    The result lives in the bindings' variables. Its denominator is the product
    of the distinct binding denominators raised to the powers needed, after
    trial-division cancellation against those denominators' factor basis.

    Args:
        polynomial: Polynomial whose occurring variables are all bound
        bindings: Variable index -> replacement, all of one arity

    Returns:
        The substituted rational function

    Raises:
        UsageError: unbound variable, bad index or mixed binding arity
    """
    if not bindings:
        raise UsageError("Substitution needs at least one binding")
    arities = {binding.nvars for binding in bindings.values()}
    if len(arities) != 1:
        raise UsageError(f"Bindings have mixed variable counts: {sorted(arities)}")
    nvars = arities.pop()
    for var in bindings:
        if not 0 <= var < polynomial.nvars:
            raise UsageError(f"Binding for x{var + 1} is out of range")
    for var in polynomial.variables():
        if var not in bindings:
            raise UsageError(f"Variable x{var + 1} is unbound in substitution")

    denominators: List[Polynomial] = []
    group_of: Dict[int, int] = {}
    for var, binding in sorted(bindings.items()):
        for index, denominator in enumerate(denominators):
            if denominator == binding.den:
                group_of[var] = index
                break
        else:
            denominators.append(binding.den)
            group_of[var] = len(denominators) - 1

    terms = polynomial.terms()
    usage: List[List[int]] = []
    max_usage = [0] * len(denominators)
    for exponent, _ in terms:
        used = [0] * len(denominators)
        for var, power in enumerate(exponent):
            if power:
                used[group_of[var]] += power
        usage.append(used)
        max_usage = [max(a, b) for a, b in zip(max_usage, used)]

    powers: Dict[Tuple[int, int], Polynomial] = {}

    def power_of(var: int, power: int) -> Polynomial:
        key = (var, power)
        if key not in powers:
            powers[key] = bindings[var].num ** power
        return powers[key]

    numerator = Polynomial.zero(nvars)
    for (exponent, coefficient), used in zip(terms, usage):
        term = Polynomial.constant(nvars, coefficient)
        for var, power in enumerate(exponent):
            if power:
                term = term * power_of(var, power)
        for index, denominator in enumerate(denominators):
            missing = max_usage[index] - used[index]
            if missing:
                term = term * denominator ** missing
        numerator = numerator + term

    denominator = Polynomial.constant(nvars, 1)
    for index, base in enumerate(denominators):
        denominator = denominator * base ** max_usage[index]

    basis = factor_candidates(denominators)
    numerator, denominator = cancel_common_factors(numerator, denominator, basis)
    logging.debug(
        f"Substituted {len(bindings)} bindings over {len(denominators)} distinct denominators"
    )
    return RationalFunction(numerator, denominator)
