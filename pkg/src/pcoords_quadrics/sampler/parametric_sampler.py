from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from pcoords_quadrics.models import QuadricSurface
from pcoords_quadrics.sampler.implicit_scan_sampler import ImplicitScanSampler
from pcoords_quadrics.sampler.surface_sampler import SurfaceSampler


@dataclass(frozen=True)
class DiagonalForm:
    """F = sum a_i x_i^2 + sum b_i x_i + c, without cross terms."""

    squares: List[float]
    linears: List[float]
    constant: float

    @staticmethod
    def of(surface: QuadricSurface) -> Optional["DiagonalForm"]:
        n = surface.nvars
        squares = [0.0] * n
        linears = [0.0] * n
        constant = 0.0
        for exponent, coefficient in surface.F.terms():
            powers = [i for i, e in enumerate(exponent) if e]
            if not powers:
                constant = float(coefficient)
            elif len(powers) > 1:
                return None
            elif exponent[powers[0]] == 2:
                squares[powers[0]] = float(coefficient)
            else:
                linears[powers[0]] = float(coefficient)
        return DiagonalForm(squares, linears, constant)

    def centre(self) -> np.ndarray:
        return np.array(
            [-b / (2 * a) if a else 0.0 for a, b in zip(self.squares, self.linears)]
        )

    def level(self) -> float:
        """r in sum a_i (x_i - h_i)^2 = r."""
        shift = sum(b * b / (4 * a) for a, b in zip(self.squares, self.linears) if a)
        return shift - self.constant


def unit_directions(rng: np.random.Generator, count: int, dims: int) -> np.ndarray:
    """Uniform directions on the unit sphere from normalized Gaussian vectors."""
    if dims == 1:
        return rng.choice([-1.0, 1.0], size=(count, 1))
    vectors = rng.standard_normal((count, dims))
    norms = np.linalg.norm(vectors, axis=1)
    norms[norms == 0] = 1.0
    return vectors / norms[:, None]


class ParametricSampler(SurfaceSampler):
    """
    Stock parameterizations for quadrics without cross terms.

    Ellipsoids use directions on the unit sphere, hyperboloids of one or two
    sheets use hyperbolic functions, and any surface linear in some variable
    is sampled in graph form. Everything else falls back to implicit scanning.
    """

    _fallback_logged = False

    def candidates(self, surface: QuadricSurface) -> np.ndarray:
        form = DiagonalForm.of(surface)
        if form is not None:
            graph_var = next(
                (i for i, (a, b) in enumerate(zip(form.squares, form.linears)) if a == 0 and b != 0),
                None,
            )
            if graph_var is not None:
                return self._graph(surface, form, graph_var)
            if all(form.squares):
                points = self._central(surface, form)
                if points is not None:
                    return points
        if not self._fallback_logged:
            logging.warning(f"No stock parameterization for {surface}; falling back to implicit scan")
            self._fallback_logged = True
        return ImplicitScanSampler(self.config, self.rng()).candidates(surface)

    def _graph(self, surface: QuadricSurface, form: DiagonalForm, var: int) -> np.ndarray:
        rng = self.rng()
        bounds = self.domain(surface)
        count = self.config.count
        points = np.empty((count, surface.nvars))
        for i, (low, high) in enumerate(bounds):
            points[:, i] = rng.uniform(low, high, size=count)
        rest = np.full(count, form.constant)
        for i, (a, b) in enumerate(zip(form.squares, form.linears)):
            if i != var:
                rest += a * points[:, i] ** 2 + b * points[:, i]
        points[:, var] = -rest / form.linears[var]
        return points

    def _central(self, surface: QuadricSurface, form: DiagonalForm) -> Optional[np.ndarray]:
        a = np.array(form.squares)
        r = form.level()
        if r == 0:
            return None
        if r < 0:
            a, r = -a, -r
        positive = np.flatnonzero(a > 0)
        negative = np.flatnonzero(a < 0)
        scales = np.sqrt(r / np.abs(a))
        rng = self.rng()
        count = self.config.count
        n = surface.nvars
        unit = np.zeros((count, n))

        if len(negative) == 0:
            unit[:, positive] = unit_directions(rng, count, len(positive))
        elif len(positive) == 0:
            logging.warning(f"{surface} has no real points")
            return np.empty((0, n))
        elif len(negative) == 1 or len(positive) == 1:
            # one sheet when a single coefficient is negative, two sheets when a single one is positive
            ring, axis = (positive, negative) if len(negative) == 1 else (negative, positive)
            reach = max(max(abs(low), abs(high)) for low, high in self.domain(surface))
            t_max = math.asinh(reach / float(scales[axis].min()))
            t = rng.uniform(-t_max, t_max, size=count)
            if len(negative) == 1:
                unit[:, ring] = np.cosh(t)[:, None] * unit_directions(rng, count, len(ring))
                unit[:, axis[0]] = np.sinh(t)
            else:
                unit[:, ring] = np.abs(np.sinh(t))[:, None] * unit_directions(rng, count, len(ring))
                unit[:, axis[0]] = np.sign(t) * np.cosh(t)
        else:
            return None
        return form.centre() + unit * scales
