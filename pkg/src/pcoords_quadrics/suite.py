from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

from pcoords_quadrics.boundary import boundary_curve
from pcoords_quadrics.errors import PcoordsError
from pcoords_quadrics.models import SampleConfig, SampleMode, ValidationSummary
from pcoords_quadrics.parsing import parse_polynomial, parse_surface
from pcoords_quadrics.polycore import CONIC_NAMES
from pcoords_quadrics.sampler import dual_cloud, sample_surface, validate_boundary


@dataclass(frozen=True)
class SuiteCase:
    """
    One reference surface with its expected boundary conic (default spacing).

    `published_caption` is the previously published conic for the surface. For
    the three centred quadrics it differs from what the duality produces and is
    reported for comparison only.
    """

    name: str
    equation: str
    boundary: str
    published_caption: str


SUITE_CASES = (
    SuiteCase(
        name="saddle",
        equation="z = -(x/2)^2 + (y/2)^2",
        boundary="4*x^2 - 4*x*y + y^2 - 16*x - 4*y + 16",
        published_caption="16 - 16*x - 4*y + y^2 - 4*x*y + 4*x^2",
    ),
    SuiteCase(
        name="sphere",
        equation="x^2 + y^2 + z^2 = 2",
        boundary="3*x^2 - 3*y^2 - 6*x + 5",
        published_caption="x^2 - 4*x*y + y^2 + 1",
    ),
    SuiteCase(
        name="hyperboloid-one-sheet",
        equation="x^2 + y^2 - z^2 = 1",
        boundary="x^2 + 4*y^2 + 2*x - 3",
        published_caption="x^2 - 4*x*y + y^2 - 1",
    ),
    SuiteCase(
        name="hyperboloid-two-sheets",
        equation="x^2 - 4y^2 + 2z^2 = -2",
        boundary="x^2 + 2*y^2 - 4",
        published_caption="x^2 - 2*x*y + 4*y^2 - 1",
    ),
)


@dataclass(frozen=True)
class SuiteResult:
    case: SuiteCase
    passed: bool
    boundary: Optional[str] = None
    validation: Optional[ValidationSummary] = None
    error: str = ""
    n_points: int = 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        detail = self.boundary if self.boundary is not None else self.error
        text = f"{status} {self.case.name}: {detail} = 0"
        if self.validation is not None:
            residual = self.validation.max_residual
            shown = "n/a" if residual is None else f"{residual:.2e}"
            text += f" [hits {self.validation.n_checked}, max residual {shown}]"
        if not self.passed and self.error:
            text += f" ({self.error})"
        return text


def run_case(case: SuiteCase, config: SampleConfig) -> SuiteResult:
    """Boundary golden comparison followed by the numeric cross-check."""
    try:
        surface = parse_surface(case.equation)
        curve = boundary_curve(surface)
        expected = parse_polynomial(case.boundary, CONIC_NAMES).normalize()
        if curve.gamma_bar != expected:
            return SuiteResult(
                case, False, curve.text, error=f"expected {case.boundary}"
            )
        points = sample_surface(surface, config)
        report = dual_cloud(surface, points, curve.spacing, config)
        summary = validate_boundary(report, curve, config)
        return SuiteResult(
            case, summary.passed, curve.text, summary, summary.reason, n_points=len(points)
        )
    except PcoordsError as e:
        logging.error(f"Suite case {case.name} failed: {e}")
        return SuiteResult(case, False, error=str(e))


def run_suite(config: Optional[SampleConfig] = None, workers: int = 4) -> List[SuiteResult]:
    """Run every case concurrently; results come back in the fixed case order."""
    config = config or SampleConfig(mode=SampleMode.BUILTIN_PARAM)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        results = list(executor.map(lambda case: run_case(case, config), SUITE_CASES))
    passed = sum(1 for result in results if result.passed)
    logging.info(f"Suite finished: {passed}/{len(results)} cases passed")
    return results
