from pcoords_quadrics.models.surface import AxisSpacing, QuadricSurface
from pcoords_quadrics.models.duality import DualSample, ProjectivePoint, PSQTriple
from pcoords_quadrics.models.boundary import BoundaryCurve, EliminationSystem, IdealFactor
from pcoords_quadrics.models.sampling import (
    CloudReport,
    SampleConfig,
    SampleMode,
    ValidationSummary,
)
from pcoords_quadrics.models.scene import Scene, Viewport
