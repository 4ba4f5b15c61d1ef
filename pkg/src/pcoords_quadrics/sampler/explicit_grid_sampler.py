from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Dict, Tuple

import numpy as np

from pcoords_quadrics.errors import UsageError
from pcoords_quadrics.models import QuadricSurface
from pcoords_quadrics.polycore import Exponent, Polynomial
from pcoords_quadrics.sampler.surface_sampler import SurfaceSampler


def split_linear(F: Polynomial, var: int) -> Tuple[Polynomial, Polynomial]:
    """
    Write F = a * x_var + b with a, b free of x_var.

    Raises:
        UsageError: F is not of degree one in x_var
    """
    if F.degree_in(var) != 1:
        raise UsageError(f"F is not linear in x{var + 1}")
    a: Dict[Exponent, Fraction] = {}
    b: Dict[Exponent, Fraction] = {}
    for exponent, coefficient in F.terms():
        if exponent[var]:
            a[exponent[:var] + (0,) + exponent[var + 1:]] = coefficient
        else:
            b[exponent] = coefficient
    return Polynomial(F.nvars, a), Polynomial(F.nvars, b)


def grid_side(count: int, dims: int) -> int:
    """Points per axis so that side**dims is the closest grid to `count`."""
    side = max(2, int(round(count ** (1.0 / dims))))
    return side


class ExplicitGridSampler(SurfaceSampler):
    """
    Solves the last variable on a regular grid over the others.

    Only surfaces of degree one in the last variable are accepted; grid nodes
    where its coefficient vanishes are skipped.
    """

    RESAMPLE = False

    def candidates(self, surface: QuadricSurface) -> np.ndarray:
        n = surface.nvars
        last = n - 1
        a, b = split_linear(surface.F, last)
        side = grid_side(self.config.count, n - 1)
        axes = [np.linspace(low, high, side) for low, high in self.domain(surface)[:last]]
        nodes = np.array(list(itertools.product(*axes)), dtype=np.float64)
        padded = np.hstack([nodes, np.zeros((len(nodes), 1))])

        coefficient = a.to_numeric()(padded)
        solvable = coefficient != 0
        if not np.all(solvable):
            logging.warning(f"Skipped {np.count_nonzero(~solvable)} grid nodes with a vertical tangent")
        padded = padded[solvable]
        padded[:, last] = -b.to_numeric()(padded) / coefficient[solvable]
        return padded

    def _filter(self, surface: QuadricSurface, points: np.ndarray) -> np.ndarray:
        # the solved coordinate is not clipped to the domain box
        if len(points) == 0:
            return points.reshape(0, surface.nvars)
        finite = np.all(np.isfinite(points), axis=1)
        on_surface = np.zeros(len(points), dtype=bool)
        on_surface[finite] = np.abs(surface.numeric(points[finite])) <= self.config.tol_surface
        return points[finite & on_surface]
