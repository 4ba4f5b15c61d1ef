from .boundary import boundary_curve
from .duality import dual_point, psq_symbolic
from .models import AxisSpacing, BoundaryCurve, QuadricSurface
from .parsing import parse_surface
from .sampler import dual_cloud, sample_surface, validate_boundary
