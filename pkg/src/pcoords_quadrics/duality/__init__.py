from .dualmap import (
    contact_measure,
    contact_minors,
    contact_surface,
    dual_point,
    gradient_determinant,
    hyperplane_image,
    psq_symbolic,
    tangent_coefficients,
)
