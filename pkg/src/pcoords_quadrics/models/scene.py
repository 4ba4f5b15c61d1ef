from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from pcoords_quadrics.errors import UsageError
from pcoords_quadrics.models.boundary import BoundaryCurve
from pcoords_quadrics.models.sampling import CloudReport
from pcoords_quadrics.models.surface import AxisSpacing

DEFAULT_PAGE_WIDTH = 800
DEFAULT_PAGE_HEIGHT = 600
DEFAULT_MARGIN = 40


@dataclass(frozen=True)
class Viewport:
    """
    Affine map from the data rectangle [x_min, x_max] x [y_min, y_max] onto a
    page of `width` x `height` pixels with a uniform margin. Page y grows
    downwards.
    """

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    width: int = DEFAULT_PAGE_WIDTH
    height: int = DEFAULT_PAGE_HEIGHT
    margin: int = DEFAULT_MARGIN

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise UsageError(
                f"Degenerate viewport [{self.x_min}, {self.x_max}] x [{self.y_min}, {self.y_max}]"
            )
        if self.width <= 2 * self.margin or self.height <= 2 * self.margin:
            raise UsageError("Page too small for its margin")

    def to_page(self, x: float, y: float) -> Tuple[float, float]:
        span_x = self.width - 2 * self.margin
        span_y = self.height - 2 * self.margin
        px = self.margin + (x - self.x_min) / (self.x_max - self.x_min) * span_x
        py = self.margin + (self.y_max - y) / (self.y_max - self.y_min) * span_y
        return (px, py)

    def contains(self, x: float, y: float) -> bool:
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max

    def asdict(self) -> Dict:
        return {
            "x": [self.x_min, self.x_max],
            "y": [self.y_min, self.y_max],
            "width": self.width,
            "height": self.height,
            "margin": self.margin,
        }


@dataclass(frozen=True)
class Scene:
    """Everything drawn in one parallel-coordinates figure."""

    spacing: AxisSpacing
    viewport: Viewport
    cloud: Optional[CloudReport] = None
    curve: Optional[BoundaryCurve] = None
    polylines: Tuple[Tuple[float, ...], ...] = ()
    title: str = ""
    resolution: int = 512

    def __post_init__(self):
        object.__setattr__(
            self, "polylines", tuple(tuple(float(v) for v in p) for p in self.polylines)
        )
        for point in self.polylines:
            self.spacing.check_arity(len(point))
        if self.resolution < 2:
            raise UsageError(f"Contour resolution must be at least 2, got {self.resolution}")

    @property
    def vertical_range(self) -> Tuple[float, float]:
        return (self.viewport.y_min, self.viewport.y_max)

    def asdict(self) -> Dict:
        return {
            "title": self.title,
            "spacing": self.spacing.asdict(),
            "viewport": self.viewport.asdict(),
            "cloud": self.cloud.asdict() if self.cloud else None,
            "curve": self.curve.asdict() if self.curve else None,
            "polylines": [list(point) for point in self.polylines],
            "resolution": self.resolution,
        }

