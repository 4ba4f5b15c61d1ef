from __future__ import annotations

import logging
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from pcoords_quadrics.errors import (
    DegenerateContactError,
    OffSurfaceError,
    SingularPointError,
    UsageError,
)
from pcoords_quadrics.models import AxisSpacing, ProjectivePoint, PSQTriple, QuadricSurface
from pcoords_quadrics.polycore import Polynomial

Number = Union[int, Fraction, float]

DEFAULT_SURFACE_TOLERANCE = 1e-10


def hyperplane_image(
    c0: Number, c: Sequence[Number], spacing: AxisSpacing
) -> ProjectivePoint:
    """
    First indexed point of the hyperplane c1*x1 + ... + cn*xn = c0.

    Args:
        c0: Right-hand side of the plane equation
        c: Coefficients c1..cn, not all zero
        spacing: Axis positions d1..dn

    Returns:
        (sum d_i c_i : c0 : sum c_i); psi = 0 is a legal ideal point

    Raises:
        UsageError: every coefficient is zero or the arity does not match
    """
    spacing.check_arity(len(c))
    if all(value == 0 for value in c):
        raise UsageError("All plane coefficients are zero: not a hyperplane")
    eta = sum((d * value for d, value in zip(spacing.d, c)), Fraction(0))
    psi = sum(c, Fraction(0))
    return ProjectivePoint(eta, c0, psi)


def _check_on_surface(surface: QuadricSurface, point: Sequence[Number], tol: float) -> None:
    if len(point) != surface.nvars:
        raise UsageError(f"Point has {len(point)} coordinates, surface has {surface.nvars}")
    residual = surface.F.evaluate(point)
    if abs(residual) > tol:
        raise OffSurfaceError(f"F{tuple(point)} = {residual} is not within {tol} of zero")


def tangent_coefficients(
    surface: QuadricSurface, point: Sequence[Number], tol: float = DEFAULT_SURFACE_TOLERANCE
) -> Tuple[Number, ...]:
    """
    Coefficients (c0, c1..cn) of the tangent hyperplane at a surface point.

    c_i is the partial derivative of F at the point and c0 = sum point_i * c_i.

    Raises:
        OffSurfaceError: |F(point)| exceeds tol
        SingularPointError: the gradient vanishes at the point
    """
    _check_on_surface(surface, point, tol)
    c = tuple(partial.evaluate(point) for partial in surface.gradient)
    if all(value == 0 for value in c):
        raise SingularPointError(f"singular point {tuple(point)}: gradient of F vanishes")
    c0 = sum((x * value for x, value in zip(point, c)), Fraction(0))
    return (c0,) + c


def psq_symbolic(surface: QuadricSurface, spacing: Optional[AxisSpacing] = None) -> PSQTriple:
    """
    P = sum d_i dF/dx_i, S = sum x_i dF/dx_i - deg(F) * F, Q = sum dF/dx_i.

    S drops the top-degree part of F by Euler's relation, so for quadrics all
    three are of degree at most one and on the surface S agrees with the
    tangent plane's c0.
    """
    spacing = AxisSpacing.resolve(spacing, surface.nvars)
    n = surface.nvars
    gradient = surface.gradient
    P = Polynomial.zero(n)
    Q = Polynomial.zero(n)
    S = surface.F.scale(-surface.degree)
    for i, partial in enumerate(gradient):
        P = P + partial.scale(spacing.d[i])
        Q = Q + partial
        S = S + Polynomial.variable(n, i) * partial
    return PSQTriple(P, S, Q)


def dual_point(
    surface: QuadricSurface,
    point: Sequence[Number],
    spacing: Optional[AxisSpacing] = None,
    tol: float = DEFAULT_SURFACE_TOLERANCE,
    psq: Optional[PSQTriple] = None,
) -> ProjectivePoint:
    """
    Dual image (P : S : Q) of the tangent plane at a surface point.

    Q = 0 gives an ideal point, which is returned rather than rejected.

    Raises:
        OffSurfaceError: |F(point)| exceeds tol
        SingularPointError: the gradient vanishes at the point
    """
    _check_on_surface(surface, point, tol)
    if all(partial.evaluate(point) == 0 for partial in surface.gradient):
        raise SingularPointError(f"singular point {tuple(point)}: gradient of F vanishes")
    psq = psq or psq_symbolic(surface, spacing)
    return ProjectivePoint(*psq.evaluate(point))


def gradient_determinant(a: Polynomial, b: Polynomial, c: Polynomial) -> Polynomial:
    """det of the 3x3 matrix whose rows are the gradients of a, b and c."""
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = a.gradient(), b.gradient(), c.gradient()
    return a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1)


def contact_minors(
    surface: QuadricSurface, psq: PSQTriple
) -> Tuple[Polynomial, Polynomial, Polynomial]:
    """
    The minors D(F,S,Q), D(F,P,Q), D(F,P,S).

    Pairing them with (eta, -xi, psi) gives the contact condition in mixed
    variables; pairing them with (P, -S, Q) gives sigma'.
    """
    if surface.nvars != 3:
        raise UsageError(f"Symbolic contact needs three variables, got {surface.nvars}")
    F = surface.F
    return (
        gradient_determinant(F, psq.S, psq.Q),
        gradient_determinant(F, psq.P, psq.Q),
        gradient_determinant(F, psq.P, psq.S),
    )


def contact_surface(
    surface: QuadricSurface, spacing: Optional[AxisSpacing] = None, normalize: bool = True
) -> Polynomial:
    """
    The contact surface sigma' in x1, x2, x3.

    It is the Jacobian determinant of (F, P/Q, S/Q) multiplied by Q^3, so its
    common zeros with F are the points whose dual lands on the boundary.

    Args:
        surface: A surface in three variables
        spacing: Axis positions, default 0, 1, 2
        normalize: Return the primitive form with positive leading coefficient

    Raises:
        UsageError: the surface does not have three variables
        DegenerateContactError: sigma' vanishes identically
    """
    psq = psq_symbolic(surface, spacing)
    d_fsq, d_fpq, d_fps = contact_minors(surface, psq)
    sigma = psq.P * d_fsq - psq.S * d_fpq + psq.Q * d_fps
    if sigma.is_zero:
        raise DegenerateContactError(
            f"degenerate contact: sigma' vanishes identically for {surface}"
        )
    logging.debug(f"Contact surface of {surface} has degree {sigma.total_degree}")
    return sigma.normalize() if normalize else sigma


def contact_measure(
    surface: QuadricSurface,
    point: Sequence[float],
    spacing: Optional[AxisSpacing] = None,
    psq: Optional[PSQTriple] = None,
) -> float:
    """
    Smallest singular value of the differential of x -> (P/Q, S/Q) restricted
    to the tangent space of the surface at `point`.

    Vanishes where the dual map drops rank, which for three variables is
    exactly where sigma' vanishes. Any number of variables is accepted.
    Returns nan when Q vanishes at the point.
    """
    psq = psq or psq_symbolic(surface, spacing)
    x = np.asarray(point, dtype=np.float64)
    gradient = np.array([partial.to_numeric().at(x) for partial in surface.gradient])
    q = psq.Q.to_numeric().at(x)
    if q == 0:
        return float("nan")
    p = psq.P.to_numeric().at(x)
    s = psq.S.to_numeric().at(x)
    grad_q = np.array([g.to_numeric().at(x) for g in psq.Q.gradient()])
    grad_p = np.array([g.to_numeric().at(x) for g in psq.P.gradient()])
    grad_s = np.array([g.to_numeric().at(x) for g in psq.S.gradient()])
    jacobian = np.vstack([(q * grad_p - p * grad_q) / q**2, (q * grad_s - s * grad_q) / q**2])
    _, _, vt = np.linalg.svd(gradient.reshape(1, -1))
    tangent = vt[1:].T
    singular_values = np.linalg.svd(jacobian @ tangent, compute_uv=False)
    return float(singular_values[-1]) if len(singular_values) >= 2 else 0.0
