from __future__ import annotations

import math

import numpy as np

from pcoords_quadrics.models import QuadricSurface
from pcoords_quadrics.sampler.surface_sampler import SurfaceSampler

SCAN_STEPS = 64
BISECTION_STEPS = 60


class ImplicitScanSampler(SurfaceSampler):
    """
    Shoots axis-parallel lines through the domain box, brackets roots of F
    along each line by sign changes on a regular grid and bisects them.

    Tangential touches without a sign change are missed.
    """

    def candidates(self, surface: QuadricSurface) -> np.ndarray:
        n = surface.nvars
        bounds = np.array(self.domain(surface), dtype=np.float64)
        rng = self.rng()
        count = self.config.count
        lines_per_axis = max(1, math.ceil(count / n))

        found = []
        for axis in range(n):
            origins = rng.uniform(bounds[:, 0], bounds[:, 1], size=(lines_per_axis, n))
            roots = self._scan(surface, origins, axis, bounds[axis])
            found.append(roots)
        points = np.concatenate(found, axis=0) if found else np.empty((0, n))
        if len(points) > count:
            order = rng.permutation(len(points))[:count]
            points = points[np.sort(order)]
        return points

    def _scan(
        self, surface: QuadricSurface, origins: np.ndarray, axis: int, interval: np.ndarray
    ) -> np.ndarray:
        n = surface.nvars
        ts = np.linspace(interval[0], interval[1], SCAN_STEPS)
        grid = np.repeat(origins[:, None, :], SCAN_STEPS, axis=1)
        grid[:, :, axis] = ts[None, :]
        values = surface.numeric(grid.reshape(-1, n)).reshape(len(origins), SCAN_STEPS)

        exact_line, exact_step = np.nonzero(values == 0)
        change_line, change_step = np.nonzero(np.signbit(values[:, :-1]) != np.signbit(values[:, 1:]))
        keep = values[change_line, change_step] != 0
        change_line, change_step = change_line[keep], change_step[keep]

        low = ts[change_step].astype(np.float64)
        high = ts[change_step + 1].astype(np.float64)
        base = origins[change_line].copy()
        low_sign = np.signbit(values[change_line, change_step])
        for _ in range(BISECTION_STEPS):
            middle = 0.5 * (low + high)
            base[:, axis] = middle
            middle_sign = np.signbit(surface.numeric(base)) if len(base) else low_sign
            same = middle_sign == low_sign
            low = np.where(same, middle, low)
            high = np.where(same, high, middle)
        base[:, axis] = 0.5 * (low + high)

        exact = origins[exact_line].copy()
        exact[:, axis] = ts[exact_step]
        return np.concatenate([exact, base], axis=0)
