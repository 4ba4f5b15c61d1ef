from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from pcoords_quadrics.duality import (
    contact_minors,
    contact_surface,
    hyperplane_image,
    psq_symbolic,
)
from pcoords_quadrics.errors import (
    CleanupError,
    DegenerateBoundaryError,
    DegenerateSystemError,
    IndivisibleError,
    UsageError,
)
from pcoords_quadrics.models import (
    AxisSpacing,
    BoundaryCurve,
    EliminationSystem,
    IdealFactor,
    QuadricSurface,
)
from pcoords_quadrics.models.boundary import ETA, PSI, X_VARS, XI
from pcoords_quadrics.polycore import (
    HOMOGENEOUS_NAMES,
    Exponent,
    Polynomial,
    RationalFunction,
    factor_candidates,
    format_polynomial,
    substitute,
)

SYSTEM_VARIABLES = 6
Matrix = List[List[Polynomial]]


def _lift(polynomial: Polynomial) -> Polynomial:
    """Embed a polynomial in x1, x2, x3 into the six system variables."""
    return polynomial.rename(list(X_VARS), SYSTEM_VARIABLES)


def _proportional(a: Polynomial, b: Polynomial) -> bool:
    if a.is_zero or b.is_zero:
        return True
    return a.scale(b.leading_coefficient) == b.scale(a.leading_coefficient)


def build_system(
    surface: QuadricSurface, spacing: Optional[AxisSpacing] = None
) -> EliminationSystem:
    """
    Write the three equations linear in x1, x2, x3.

    Args:
        surface: Quadric in three variables
        spacing: Axis positions, default 0, 1, 2

    Returns:
        eqA = eta*Q - psi*P, eqB = xi*Q - psi*S and the contact condition
        eqC = eta*D(F,S,Q) - xi*D(F,P,Q) + psi*D(F,P,S)

    Raises:
        UsageError: the surface does not have three variables
        DegenerateSystemError: a plane, or a spacing making P proportional to Q
    """
    if surface.nvars != 3:
        raise UsageError(f"Symbolic elimination needs three variables, got {surface.nvars}")
    spacing = AxisSpacing.resolve(spacing, surface.nvars)
    if surface.is_plane:
        raise DegenerateSystemError(f"{surface} is a plane: its image is a single indexed point")

    psq = psq_symbolic(surface, spacing)
    if _proportional(psq.P, psq.Q):
        raise DegenerateSystemError(
            f"degenerate surface/spacing: P = {psq.P!r} is proportional to Q = {psq.Q!r} "
            f"for spacing {spacing}"
        )
    eta = Polynomial.variable(SYSTEM_VARIABLES, ETA)
    xi = Polynomial.variable(SYSTEM_VARIABLES, XI)
    psi = Polynomial.variable(SYSTEM_VARIABLES, PSI)
    P, S, Q = (_lift(p) for p in psq)
    d_fsq, d_fpq, d_fps = (_lift(d) for d in contact_minors(surface, psq))

    system = EliminationSystem(
        surface=surface,
        spacing=spacing,
        psq=psq,
        eqA=eta * Q - psi * P,
        eqB=xi * Q - psi * S,
        eqC=eta * d_fsq - xi * d_fpq + psi * d_fps,
    )
    logging.info(f"Built elimination system for {surface} with spacing {spacing}")
    return system


def linear_form(system: EliminationSystem) -> Tuple[Matrix, List[Polynomial]]:
    """
    Split each equation into sum_j M[i][j] * x_j = b[i].

    Entries of M and b are polynomials in (eta, xi, psi).
    """
    matrix: Matrix = [[Polynomial.zero(3) for _ in range(3)] for _ in range(3)]
    rhs: List[Polynomial] = []
    for row, equation in enumerate(system.equations()):
        constant: Dict[Exponent, Fraction] = {}
        entries: List[Dict[Exponent, Fraction]] = [{}, {}, {}]
        for exponent, coefficient in equation.terms():
            x_part, h_part = exponent[:3], exponent[3:]
            x_degree = sum(x_part)
            if x_degree == 0:
                constant[h_part] = -coefficient
            elif x_degree == 1:
                entries[x_part.index(1)][h_part] = coefficient
            else:
                raise UsageError(f"Equation {row + 1} is not linear in x1, x2, x3")
        for column in range(3):
            matrix[row][column] = Polynomial(3, entries[column])
        rhs.append(Polynomial(3, constant))
    return matrix, rhs


def _choose_pivot(augmented: Matrix, step: int) -> Optional[Tuple[int, int]]:
    """Nonzero entry of least total degree; ties go to the lowest row, then column."""
    best: Optional[Tuple[int, int, int]] = None
    for row in range(step, 3):
        for column in range(step, 3):
            entry = augmented[row][column]
            if entry.is_zero:
                continue
            key = (entry.total_degree, row, column)
            if best is None or key < best:
                best = key
    return None if best is None else (best[1], best[2])


def _eliminate(
    system: EliminationSystem,
) -> Tuple[Tuple[RationalFunction, ...], List[Polynomial], Polynomial]:
    """Fraction-free elimination with full pivoting; returns solutions, pivots, determinant."""
    matrix, rhs = linear_form(system)
    augmented = [matrix[row] + [rhs[row]] for row in range(3)]
    columns = [0, 1, 2]
    previous = Polynomial.constant(3, 1)
    pivots: List[Polynomial] = []

    for step in range(3):
        choice = _choose_pivot(augmented, step)
        if choice is None:
            raise DegenerateSystemError(
                f"degenerate surface/spacing: pivot {step + 1} vanishes identically "
                f"for {system.surface}"
            )
        row, column = choice
        augmented[step], augmented[row] = augmented[row], augmented[step]
        for line in augmented:
            line[step], line[column] = line[column], line[step]
        columns[step], columns[column] = columns[column], columns[step]

        pivot = augmented[step][step]
        for below in range(step + 1, 3):
            for j in range(step + 1, 4):
                augmented[below][j] = (
                    pivot * augmented[below][j] - augmented[below][step] * augmented[step][j]
                ).exact_divide(previous)
            augmented[below][step] = Polynomial.zero(3)
        pivots.append(pivot)
        previous = pivot
        logging.debug(
            f"Pivot {step + 1}: {format_polynomial(pivot, HOMOGENEOUS_NAMES)} "
            f"for x{columns[step] + 1}"
        )

    determinant = previous
    numerators: List[Polynomial] = [Polynomial.zero(3)] * 3
    for step in range(2, -1, -1):
        accumulated = determinant * augmented[step][3]
        for j in range(step + 1, 3):
            accumulated = accumulated - augmented[step][j] * numerators[j]
        numerators[step] = accumulated.exact_divide(augmented[step][step])

    basis = factor_candidates(
        pivots + [determinant] + [Polynomial.variable(3, i) for i in range(3)]
    )
    solutions: List[Optional[RationalFunction]] = [None, None, None]
    for step, variable in enumerate(columns):
        solutions[variable] = RationalFunction(numerators[step], determinant).cancel(basis)
    logging.info(
        f"Solved elimination system; determinant {format_polynomial(determinant, HOMOGENEOUS_NAMES)}"
    )
    return tuple(s for s in solutions if s is not None), pivots, determinant


def solve_linear_system(system: EliminationSystem) -> Tuple[RationalFunction, ...]:
    """
    Solve for x1, x2, x3 as rational functions of (eta, xi, psi).

    Returns:
        The three solutions with common factors against the pivots cancelled
        and denominators sign-normalized

    Raises:
        DegenerateSystemError: the coefficient matrix is singular, naming the
            step whose pivot vanished
    """
    solutions, _, _ = _eliminate(system)
    return solutions


def _strip_factors(
    numerator: Polynomial, candidates: Sequence[Polynomial]
) -> Tuple[Polynomial, List[IdealFactor]]:
    stripped: List[IdealFactor] = []
    for factor in candidates:
        multiplicity = 0
        while numerator.total_degree >= factor.total_degree:
            try:
                numerator = numerator.exact_divide(factor)
            except IndivisibleError:
                break
            multiplicity += 1
        if multiplicity:
            stripped.append(IdealFactor(factor, multiplicity))
    return numerator, stripped


def dehomogenize(polynomial: Polynomial) -> Polynomial:
    """eta -> x, xi -> y, psi -> 1."""
    x = RationalFunction(Polynomial.variable(2, 0))
    y = RationalFunction(Polynomial.variable(2, 1))
    one = RationalFunction.constant(2, 1)
    return substitute(polynomial, {0: x, 1: y, 2: one}).num


def boundary_curve(
    surface: QuadricSurface, spacing: Optional[AxisSpacing] = None
) -> BoundaryCurve:
    """
    Exact boundary conic of the dual region of a quadric.

    Solves the elimination system, substitutes the solutions into F, keeps
    the numerator and strips the factors it shares with the system
    determinant, then sets psi = 1.

    Args:
        surface: Quadric in three variables; a plane short-circuits to its
            single indexed point
        spacing: Axis positions, default 0, 1, 2

    Returns:
        The boundary record

    Raises:
        DegenerateSystemError: singular system for this surface and spacing
        DegenerateContactError: sigma' vanishes identically
        DegenerateBoundaryError: nothing but stripped factors remains
        CleanupError: the cleaned numerator still has degree above two
    """
    if surface.nvars != 3:
        raise UsageError(f"Symbolic elimination needs three variables, got {surface.nvars}")
    spacing = AxisSpacing.resolve(spacing, surface.nvars)

    if surface.is_plane:
        coefficients = [
            surface.F.coefficient(tuple(int(i == j) for j in range(3))) for i in range(3)
        ]
        c0 = -surface.F.coefficient((0, 0, 0))
        point = hyperplane_image(c0, coefficients, spacing)
        logging.info(f"{surface} is a plane with indexed point {point}")
        return BoundaryCurve(
            surface=surface, spacing=spacing, degenerate="plane", indexed_point=point
        )

    sigma = contact_surface(surface, spacing)
    system = build_system(surface, spacing)
    solutions, pivots, determinant = _eliminate(system)

    substituted = substitute(surface.F, dict(enumerate(solutions)))
    numerator = substituted.num
    if numerator.is_zero:
        raise DegenerateBoundaryError(
            f"degenerate: empty or measure-zero region, F vanishes on every solution for {surface}"
        )

    candidates = factor_candidates([determinant])
    cleaned, stripped = _strip_factors(numerator, candidates)
    for item in stripped:
        logging.info(
            f"Stripped factor {format_polynomial(item.factor, HOMOGENEOUS_NAMES)} "
            f"with multiplicity {item.multiplicity}"
        )
    if cleaned.total_degree > 2:
        dump = ", ".join(format_polynomial(c, HOMOGENEOUS_NAMES) for c in candidates)
        raise CleanupError(
            f"cleanup failure: numerator of degree {cleaned.total_degree} remains "
            f"({format_polynomial(cleaned, HOMOGENEOUS_NAMES)}); candidate factors: {dump}"
        )
    if cleaned.total_degree < 1:
        raise DegenerateBoundaryError(
            f"degenerate: empty or measure-zero region for {surface}"
        )

    homogeneous = cleaned.normalize()
    gamma = dehomogenize(homogeneous).normalize()
    curve = BoundaryCurve(
        surface=surface,
        spacing=spacing,
        gamma_bar=gamma,
        sigma_prime=sigma,
        homogeneous=homogeneous,
        ideal_factors=tuple(stripped),
    )
    logging.info(f"Boundary of {surface}: {curve.text} = 0")
    return curve
