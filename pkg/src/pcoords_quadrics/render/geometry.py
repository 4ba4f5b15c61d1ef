from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np

from pcoords_quadrics.models import AxisSpacing, BoundaryCurve, CloudReport, Viewport

DEFAULT_VERTICAL_RANGE = (-4.0, 4.0)
# Quantiles of the affine duals used to frame a cloud; far outliers are clipped.
FRAME_QUANTILES = (0.02, 0.98)


def polyline_image(point: Sequence[float], spacing: AxisSpacing) -> List[Tuple[float, float]]:
    """Vertices (d_i, point_i) of the polygonal line representing a point."""
    spacing.check_arity(len(point))
    return [(float(d), float(value)) for d, value in zip(spacing.d, point)]


def fit_viewport(
    spacing: AxisSpacing,
    cloud: Optional[CloudReport] = None,
    curve: Optional[BoundaryCurve] = None,
    polylines: Sequence[Sequence[float]] = (),
    padding: float = 0.1,
) -> Viewport:
    """
    Data rectangle covering the axes, the polylines and the bulk of the cloud.

    Without any data the vertical range defaults to [-4, 4].
    """
    xs: List[float] = [float(d) for d in spacing.d]
    ys: List[float] = []
    for point in polylines:
        ys.extend(float(v) for v in point)
    if cloud is not None:
        affine = np.array(
            [sample.dual.affine() for sample in cloud.samples if not sample.is_ideal],
            dtype=np.float64,
        ).reshape(-1, 2)
        if len(affine):
            low = np.quantile(affine, FRAME_QUANTILES[0], axis=0)
            high = np.quantile(affine, FRAME_QUANTILES[1], axis=0)
            xs.extend([float(low[0]), float(high[0])])
            ys.extend([float(low[1]), float(high[1])])
    if curve is not None and curve.indexed_point is not None and not curve.indexed_point.is_ideal:
        x, y = curve.indexed_point.affine()
        xs.append(float(x))
        ys.append(float(y))
    if not ys:
        ys.extend(DEFAULT_VERTICAL_RANGE)

    x_min, x_max = min(xs), max(xs)
    y_min, y_max = min(ys), max(ys)
    x_pad = max((x_max - x_min) * padding, 0.5)
    y_pad = max((y_max - y_min) * padding, 0.5)
    return Viewport(x_min - x_pad, x_max + x_pad, y_min - y_pad, y_max + y_pad)
