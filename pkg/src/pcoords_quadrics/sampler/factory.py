from __future__ import annotations

from typing import Dict, Type

import numpy as np

from pcoords_quadrics.models import QuadricSurface, SampleConfig, SampleMode
from pcoords_quadrics.sampler.explicit_grid_sampler import ExplicitGridSampler
from pcoords_quadrics.sampler.implicit_scan_sampler import ImplicitScanSampler
from pcoords_quadrics.sampler.parametric_sampler import ParametricSampler
from pcoords_quadrics.sampler.surface_sampler import SurfaceSampler

SAMPLERS: Dict[SampleMode, Type[SurfaceSampler]] = {
    SampleMode.EXPLICIT_GRID: ExplicitGridSampler,
    SampleMode.BUILTIN_PARAM: ParametricSampler,
    SampleMode.IMPLICIT_SCAN: ImplicitScanSampler,
}


def sample_surface(surface: QuadricSurface, config: SampleConfig) -> np.ndarray:
    """
    Sample points of the surface with the sampler chosen by `config.mode`.

    Returns:
        Array of shape (m, n); every row satisfies |F| <= tol_surface. An
        empty array (with a warning logged) when the domain misses the surface.

    Raises:
        UsageError: explicit-grid mode on a surface not linear in its last variable
    """
    return SAMPLERS[config.mode](config).sample(surface)
