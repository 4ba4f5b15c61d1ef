from __future__ import annotations

import csv
import logging
from dataclasses import replace
from typing import List, Optional, TextIO, Tuple

import numpy as np

from pcoords_quadrics.errors import UsageError
from pcoords_quadrics.models import (
    BoundaryCurve,
    CloudReport,
    DualSample,
    SampleConfig,
    ValidationSummary,
)

# Share of interior samples that must lie off the conic.
INTERIOR_OFF_CURVE_SHARE = 0.99
MAX_REPORTED_FAILURES = 10


def curve_residuals(curve: BoundaryCurve, samples: List[DualSample]) -> np.ndarray:
    """|gamma(x, y)| / (1 + |grad gamma(x, y)|) at the affine duals of the samples."""
    if not samples:
        return np.zeros(0)
    affine = np.array([sample.dual.affine() for sample in samples], dtype=np.float64)
    values = np.abs(curve.numeric(affine))
    dx, dy = curve.numeric_gradient
    gradient = np.hypot(dx(affine), dy(affine))
    return values / (1.0 + gradient)


def attach_curve_residual(report: CloudReport, curve: BoundaryCurve) -> CloudReport:
    """
    Copy of the report with `max_curve_residual` set to the largest conic
    residual over its non-ideal boundary hits; None without hits or conic.

    Raises:
        UsageError: the report and curve come from different surfaces or spacings
    """
    _check_identity(report, curve)
    hits = [sample for sample in report.boundary_hits if not sample.is_ideal]
    if curve.gamma_bar is None or not hits:
        return replace(report, max_curve_residual=None)
    return replace(report, max_curve_residual=float(curve_residuals(curve, hits).max()))


def _check_identity(report: CloudReport, curve: BoundaryCurve) -> None:
    if not report.surface.same_surface(curve.surface) or report.spacing != curve.spacing:
        raise UsageError(
            f"mismatched surface identity: cloud of {report.surface} with spacing "
            f"{report.spacing} against boundary of {curve.surface} with spacing {curve.spacing}"
        )


def validate_boundary(
    report: CloudReport, curve: BoundaryCurve, config: Optional[SampleConfig] = None
) -> ValidationSummary:
    """
    Check the boundary hits of a dual cloud against the symbolic conic.

    Every non-ideal hit must have a residual within tol_curve, and at least
    99% of the non-ideal interior samples must have a residual above it, so
    that a conic vanishing everywhere cannot pass.

    Raises:
        UsageError: the report and curve come from different surfaces or spacings
    """
    config = config or SampleConfig()
    _check_identity(report, curve)
    tolerance = config.tol_curve
    if curve.gamma_bar is None:
        return ValidationSummary(
            passed=False,
            n_hits=len(report.boundary_hits),
            n_checked=0,
            max_residual=None,
            n_interior=0,
            interior_off_curve_fraction=0.0,
            tolerance=tolerance,
            reason=f"degenerate boundary ({curve.degenerate}) has no conic to check against",
        )

    hits = [sample for sample in report.boundary_hits if not sample.is_ideal]
    interior = [sample for sample in report.interior if not sample.is_ideal]
    hit_residuals = curve_residuals(curve, hits)
    interior_residuals = curve_residuals(curve, interior)

    max_residual = float(hit_residuals.max()) if len(hit_residuals) else None
    off_curve = (
        float(np.count_nonzero(interior_residuals > tolerance)) / len(interior)
        if interior
        else 1.0
    )
    failures: List[Tuple[Tuple[float, ...], float]] = [
        (sample.point, float(residual))
        for sample, residual in zip(hits, hit_residuals)
        if residual > tolerance
    ][:MAX_REPORTED_FAILURES]

    reasons = []
    if not hits:
        reasons.append("no boundary hits to check")
    elif max_residual is not None and max_residual > tolerance:
        reasons.append(f"max residual {max_residual:.3g} exceeds {tolerance:.3g}")
    if off_curve < INTERIOR_OFF_CURVE_SHARE:
        reasons.append(f"only {off_curve:.1%} of interior samples lie off the conic")

    summary = ValidationSummary(
        passed=not reasons,
        n_hits=len(report.boundary_hits),
        n_checked=len(hits),
        max_residual=max_residual,
        n_interior=len(interior),
        interior_off_curve_fraction=off_curve,
        tolerance=tolerance,
        failures=tuple(failures),
        reason="; ".join(reasons),
    )
    if summary.passed:
        logging.info(f"Boundary of {curve.surface} verified on {len(hits)} hits")
    else:
        logging.warning(f"Boundary verification failed for {curve.surface}: {summary.reason}")
    return summary


def write_cloud_csv(report: CloudReport, stream: TextIO) -> None:
    """Columns x1..xn, eta, xi, psi, jac, is_boundary, is_ideal; floats with 17 significant digits."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerows(report.csv_rows())
