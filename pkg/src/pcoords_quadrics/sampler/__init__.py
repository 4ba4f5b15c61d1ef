from .surface_sampler import SurfaceSampler, project_onto_surface
from .explicit_grid_sampler import ExplicitGridSampler, split_linear
from .implicit_scan_sampler import ImplicitScanSampler
from .parametric_sampler import ParametricSampler
from .factory import sample_surface
from .dual_cloud import ContactField, dual_cloud
from .validation import attach_curve_residual, curve_residuals, validate_boundary, write_cloud_csv
