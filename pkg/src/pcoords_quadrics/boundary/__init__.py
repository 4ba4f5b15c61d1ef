from .elimination import (
    boundary_curve,
    build_system,
    dehomogenize,
    linear_form,
    solve_linear_system,
)
