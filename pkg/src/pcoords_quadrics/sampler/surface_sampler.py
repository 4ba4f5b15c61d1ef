from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from typing import List, Optional, Tuple

import numpy as np

from pcoords_quadrics.models import QuadricSurface, SampleConfig

NEWTON_STEPS = 4
# Candidate rounds drawn before a sampler settles for fewer than `count` points.
MAX_ROUNDS = 16


def gradient_matrix(surface: QuadricSurface, points: np.ndarray) -> np.ndarray:
    """Rows of the gradient of F at each point."""
    return np.stack([partial(points) for partial in surface.numeric_gradient], axis=1)


def project_onto_surface(
    surface: QuadricSurface, points: np.ndarray, steps: int = NEWTON_STEPS
) -> np.ndarray:
    """Newton steps along the gradient: x <- x - F(x) grad F / |grad F|^2."""
    points = np.array(points, dtype=np.float64, copy=True)
    if points.size == 0:
        return points
    for _ in range(steps):
        values = surface.numeric(points)
        gradients = gradient_matrix(surface, points)
        norms = np.einsum("ij,ij->i", gradients, gradients)
        movable = norms > 0
        scale = np.zeros_like(values)
        scale[movable] = values[movable] / norms[movable]
        points = points - scale[:, None] * gradients
    return points


class SurfaceSampler(ABC):
    """
    Interface for producing points on a surface inside the configured domain.
    This is the base abstract class that all samplers should extend.
    """

    # Random samplers draw further rounds until `count` points land in the domain.
    RESAMPLE = True

    def __init__(self, config: SampleConfig, rng: Optional[np.random.Generator] = None):
        self.config = config
        self._rng = rng if rng is not None else np.random.default_rng(config.seed)

    @abstractmethod
    def candidates(self, surface: QuadricSurface) -> np.ndarray:
        """
        Produce raw candidate points, approximately on the surface.

        Args:
            surface: Surface to sample

        Returns:
            Array of shape (m, n)
        """
        pass

    def sample(self, surface: QuadricSurface) -> np.ndarray:
        """
        Sample the surface: candidates are polished onto F = 0, then kept when
        inside the domain box and within tol_surface of the surface.

        Random samplers draw new rounds of candidates until `count` points
        are kept, for at most MAX_ROUNDS rounds or until a round keeps
        nothing. The result is truncated to `count` rows.
        """
        rounds = MAX_ROUNDS if self.RESAMPLE else 1
        batches: List[np.ndarray] = []
        total = dropped = 0
        for _ in range(rounds):
            raw = np.asarray(self.candidates(surface), dtype=np.float64).reshape(-1, surface.nvars)
            points = project_onto_surface(surface, raw)
            kept = self._filter(surface, points)
            dropped += len(points) - len(kept)
            if len(kept) == 0:
                break
            batches.append(kept)
            total += len(kept)
            if total >= self.config.count:
                break
        if dropped:
            logging.info(f"{type(self).__name__} dropped {dropped} candidates off the domain or surface")
        if total == 0:
            logging.warning(f"No surface intersection in domain for {surface}")
            return np.empty((0, surface.nvars))
        kept = np.concatenate(batches, axis=0)
        if self.RESAMPLE:
            kept = kept[: self.config.count]
        if len(kept) < self.config.count:
            logging.info(f"{type(self).__name__} kept {len(kept)} of {self.config.count} requested points")
        logging.info(f"{type(self).__name__} produced {len(kept)} points on {surface}")
        return kept

    def _filter(self, surface: QuadricSurface, points: np.ndarray) -> np.ndarray:
        if len(points) == 0:
            return points.reshape(0, surface.nvars)
        bounds = self.domain(surface)
        low = np.array([b[0] for b in bounds])
        high = np.array([b[1] for b in bounds])
        inside = np.all((points >= low) & (points <= high), axis=1)
        finite = np.all(np.isfinite(points), axis=1)
        mask = inside & finite
        on_surface = np.zeros(len(points), dtype=bool)
        on_surface[mask] = np.abs(surface.numeric(points[mask])) <= self.config.tol_surface
        return points[mask & on_surface]

    def domain(self, surface: QuadricSurface) -> List[Tuple[float, float]]:
        return self.config.domain_for(surface.nvars)

    def rng(self) -> np.random.Generator:
        return self._rng
