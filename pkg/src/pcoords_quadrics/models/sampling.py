from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from pcoords_quadrics.errors import UsageError
from pcoords_quadrics.models.duality import DualSample
from pcoords_quadrics.models.surface import AxisSpacing, QuadricSurface

DEFAULT_DOMAIN_BOUND = 4.0
DEFAULT_COUNT = 1000

Interval = Tuple[float, float]


class SampleMode(str, Enum):
    EXPLICIT_GRID = "explicit-grid"
    BUILTIN_PARAM = "builtin-param"
    IMPLICIT_SCAN = "implicit-scan"

    @staticmethod
    def parse(text: str) -> "SampleMode":
        try:
            return SampleMode(text)
        except ValueError as e:
            choices = ", ".join(mode.value for mode in SampleMode)
            raise UsageError(f"Unknown sample mode {text!r}; choose one of {choices}") from e


@dataclass(frozen=True)
class SampleConfig:
    """
    Sampling and tolerance settings shared by the numeric engine.

    An empty `domain` means [-4, 4] for every variable; a single interval is
    repeated for every variable.
    """

    mode: SampleMode = SampleMode.BUILTIN_PARAM
    domain: Tuple[Interval, ...] = ()
    count: int = DEFAULT_COUNT
    tol_surface: float = 1e-10
    tol_contact: float = 1e-9
    tol_curve: float = 1e-6
    seed: int = 0
    refine: int = 32
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "mode", SampleMode(self.mode))
        object.__setattr__(self, "domain", tuple(tuple(map(float, iv)) for iv in self.domain))
        if self.count <= 0:
            raise UsageError(f"Sample count must be positive, got {self.count}")
        if self.workers <= 0:
            raise UsageError(f"Worker count must be positive, got {self.workers}")
        if self.refine < 0:
            raise UsageError(f"Refinement count must not be negative, got {self.refine}")
        for name in ("tol_surface", "tol_contact", "tol_curve"):
            if not getattr(self, name) > 0:
                raise UsageError(f"{name} must be positive, got {getattr(self, name)}")
        for low, high in self.domain:
            if not low < high:
                raise UsageError(f"Empty sampling interval [{low}, {high}]")

    def domain_for(self, nvars: int) -> List[Interval]:
        if not self.domain:
            return [(-DEFAULT_DOMAIN_BOUND, DEFAULT_DOMAIN_BOUND)] * nvars
        if len(self.domain) == 1:
            return [self.domain[0]] * nvars
        if len(self.domain) != nvars:
            raise UsageError(
                f"Domain has {len(self.domain)} intervals, surface has {nvars} variables"
            )
        return list(self.domain)

    def with_changes(self, **changes) -> SampleConfig:
        return replace(self, **changes)

    def asdict(self) -> Dict:
        return {
            "mode": self.mode.value,
            "domain": [list(iv) for iv in self.domain],
            "count": self.count,
            "tol_surface": self.tol_surface,
            "tol_contact": self.tol_contact,
            "tol_curve": self.tol_curve,
            "seed": self.seed,
            "refine": self.refine,
            "workers": self.workers,
        }


@dataclass(frozen=True)
class CloudReport:
    """Dual samples of one surface together with their bookkeeping counts."""

    surface: QuadricSurface
    spacing: AxisSpacing
    samples: Tuple[DualSample, ...]
    n_ideal: int = 0
    n_singular: int = 0
    max_curve_residual: Optional[float] = None

    @property
    def nvars(self) -> int:
        return self.surface.nvars

    @property
    def boundary_hits(self) -> List[DualSample]:
        return [sample for sample in self.samples if sample.is_boundary]

    @property
    def interior(self) -> List[DualSample]:
        return [sample for sample in self.samples if not sample.is_boundary]

    def csv_rows(self) -> List[List[str]]:
        return [DualSample.csv_header(self.nvars)] + [s.csv_row() for s in self.samples]

    def asdict(self) -> Dict:
        return {
            "surface": self.surface.text,
            "spacing": self.spacing.asdict(),
            "n_samples": len(self.samples),
            "n_boundary": len(self.boundary_hits),
            "n_ideal": self.n_ideal,
            "n_singular": self.n_singular,
            "max_curve_residual": self.max_curve_residual,
        }


@dataclass(frozen=True)
class ValidationSummary:
    """Outcome of checking numeric boundary hits against the symbolic conic."""

    passed: bool
    n_hits: int
    n_checked: int
    max_residual: Optional[float]
    n_interior: int
    interior_off_curve_fraction: float
    tolerance: float
    failures: Sequence[Tuple[Tuple[float, ...], float]] = field(default_factory=tuple)
    reason: str = ""

    def asdict(self) -> Dict:
        return {
            "passed": self.passed,
            "n_hits": self.n_hits,
            "n_checked": self.n_checked,
            "max_residual": self.max_residual,
            "n_interior": self.n_interior,
            "interior_off_curve_fraction": self.interior_off_curve_fraction,
            "tolerance": self.tolerance,
            "failures": [
                {"point": list(point), "residual": residual} for point, residual in self.failures
            ],
            "reason": self.reason,
        }
