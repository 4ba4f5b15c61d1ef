import json
import random
import unittest
from fractions import Fraction

from pcoords_quadrics.boundary import (
    boundary_curve,
    build_system,
    dehomogenize,
    linear_form,
    solve_linear_system,
)
from pcoords_quadrics.duality import psq_symbolic
from pcoords_quadrics.errors import BoundaryError, DegenerateSystemError, UsageError
from pcoords_quadrics.models import AxisSpacing, IdealFactor, QuadricSurface
from pcoords_quadrics.models.boundary import SYSTEM_NAMES
from pcoords_quadrics.parsing import parse_polynomial, parse_surface
from pcoords_quadrics.polycore import (
    CONIC_NAMES,
    HOMOGENEOUS_NAMES,
    Polynomial,
    RationalFunction,
)
from pcoords_quadrics.utils import RationalJsonEncoder

SADDLE = "z = -(x/2)^2 + (y/2)^2"
SPHERE = "x^2 + y^2 + z^2 = 2"
ONE_SHEET = "x^2 + y^2 - z^2 = 1"
TWO_SHEETS = "x^2 - 4y^2 + 2z^2 = -2"


def system_poly(text):
    return parse_polynomial(text, SYSTEM_NAMES)


def homogeneous(text):
    return parse_polynomial(text, HOMOGENEOUS_NAMES)


def ratio(numerator, denominator):
    return RationalFunction(homogeneous(numerator), homogeneous(denominator))


def random_quadric(rng):
    while True:
        terms = {}
        for exponent in [
            (2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1),
            (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0),
        ]:
            if rng.random() < 0.6:
                terms[exponent] = rng.randint(-4, 4)
        F = Polynomial(3, terms)
        if F.total_degree == 2:
            return QuadricSurface(F)


class TestBuildSystem(unittest.TestCase):
    def test_saddle_equations(self):
        system = build_system(parse_surface(SADDLE))
        self.assertEqual(system.eqA, system_poly("2(eta x + (psi - eta) y + 2eta - 4psi)"))
        self.assertEqual(system.eqB, system_poly("2(xi x - xi y + 2psi z + 2xi)"))
        self.assertEqual(system.eqC, system_poly("16(x (psi - eta) + y eta - xi)"))

    def test_linear_form(self):
        matrix, rhs = linear_form(build_system(parse_surface(SADDLE)))
        self.assertEqual(matrix[0], [homogeneous("2eta"), homogeneous("2psi - 2eta"), Polynomial.zero(3)])
        self.assertEqual(rhs[0], homogeneous("8psi - 4eta"))
        self.assertEqual(matrix[1][2], homogeneous("4psi"))
        self.assertEqual(rhs[2], homogeneous("16xi"))

    def test_sphere_equations_are_linear(self):
        system = build_system(parse_surface(SPHERE))
        for equation in system.equations():
            x_degree = max(sum(exponent[:3]) for exponent, _ in equation.terms())
            self.assertEqual(x_degree, 1)
        self.assertEqual(system.psq, psq_symbolic(parse_surface(SPHERE)))

    def test_plane_is_rejected(self):
        with self.assertRaises(DegenerateSystemError):
            build_system(parse_surface("x + y + z = 1"))

    def test_proportional_rows_are_rejected(self):
        with self.assertRaises(DegenerateSystemError):
            build_system(parse_surface("x^2 = 1"))

    def test_three_variables_only(self):
        with self.assertRaises(UsageError):
            build_system(parse_surface("x1^2 + x2^2 + x3^2 + x4^2 = 1"))

    def test_serialized_equations(self):
        record = build_system(parse_surface(SADDLE)).asdict()
        self.assertEqual(record["psq"]["Q"], "2*x - 2*y + 4")
        self.assertEqual(set(record), {"surface", "spacing", "psq", "eqA", "eqB", "eqC"})


class TestSolveLinearSystem(unittest.TestCase):
    def test_saddle_solutions(self):
        x1, x2, x3 = solve_linear_system(build_system(parse_surface(SADDLE)))
        self.assertEqual(x1, -ratio("-2eta^2 + eta xi - psi xi + 4psi eta", "psi (psi - 2eta)"))
        self.assertEqual(x2, ratio("2eta^2 - eta xi - 6psi eta + 4psi^2", "psi (psi - 2eta)"))
        self.assertEqual(x3, ratio("xi (-xi + 2eta + 2psi)", "2psi (psi - 2eta)"))

    def test_sphere_solutions(self):
        x1, x2, x3 = solve_linear_system(build_system(parse_surface(SPHERE)))
        self.assertEqual(x1, ratio("5psi - 3eta", "3xi"))
        self.assertEqual(x2, ratio("2psi", "3xi"))
        self.assertEqual(x3, ratio("3eta - psi", "3xi"))

    def test_solutions_satisfy_the_system(self):
        system = build_system(parse_surface(ONE_SHEET))
        solutions = solve_linear_system(system)
        point = (Fraction(2, 7), Fraction(5, 3), Fraction(-11, 13))
        values = [solution.evaluate(point) for solution in solutions]
        for equation in system.equations():
            self.assertEqual(equation.evaluate(tuple(values) + point), 0)

    def test_denominators_are_sign_normalized(self):
        for solution in solve_linear_system(build_system(parse_surface(SADDLE))):
            self.assertGreater(solution.den.leading_coefficient, 0)


class TestBoundaryCurve(unittest.TestCase):
    def test_golden_boundaries(self):
        cases = {
            SADDLE: "4*x^2 - 4*x*y + y^2 - 16*x - 4*y + 16",
            SPHERE: "3*x^2 - 3*y^2 - 6*x + 5",
            ONE_SHEET: "x^2 + 4*y^2 + 2*x - 3",
            TWO_SHEETS: "x^2 + 2*y^2 - 4",
        }
        for equation, expected in cases.items():
            with self.subTest(equation=equation):
                curve = boundary_curve(parse_surface(equation))
                self.assertEqual(curve.text, expected)
                self.assertEqual(curve.gamma_bar, parse_polynomial(expected, CONIC_NAMES))

    def test_saddle_intermediates(self):
        curve = boundary_curve(parse_surface(SADDLE))
        self.assertEqual(curve.sigma_prime_text, "x^2 - y^2 - 2*x + 4*y + 2*z")
        self.assertEqual(
            curve.homogeneous,
            homogeneous("16psi^2 - 16psi eta - 4psi xi + xi^2 - 4eta xi + 4eta^2"),
        )
        self.assertEqual(curve.gamma_preimage, (parse_surface(SADDLE).F, curve.sigma_prime))
        self.assertEqual(curve.ideal_factors, ())

    def test_discriminants(self):
        self.assertEqual(boundary_curve(parse_surface(SADDLE)).discriminant, 0)
        self.assertEqual(boundary_curve(parse_surface(SPHERE)).discriminant, 36)
        self.assertEqual(boundary_curve(parse_surface(ONE_SHEET)).discriminant, -16)
        self.assertEqual(boundary_curve(parse_surface(TWO_SHEETS)).discriminant, -8)

    def test_dehomogenize(self):
        self.assertEqual(
            dehomogenize(homogeneous("3eta^2 - 3xi^2 - 6eta psi + 5psi^2")),
            parse_polynomial("3x^2 - 3y^2 - 6x + 5", CONIC_NAMES),
        )

    def test_plane_short_circuit(self):
        curve = boundary_curve(parse_surface("4z = 0"))
        self.assertEqual(curve.degenerate, "plane")
        self.assertIsNone(curve.gamma_bar)
        self.assertIsNone(curve.text)
        self.assertEqual(curve.indexed_point.components(), (2, 0, 1))
        raw = boundary_curve(QuadricSurface(parse_polynomial("4z", ("x", "y", "z"))))
        self.assertEqual(raw.indexed_point.components(), (8, 0, 4))

    def test_scaling_the_equation(self):
        surface = parse_surface(SPHERE)
        scaled = QuadricSurface(surface.F.scale(Fraction(-7, 3)))
        self.assertEqual(boundary_curve(scaled).gamma_bar, boundary_curve(surface).gamma_bar)

    def test_other_spacing(self):
        spacing = AxisSpacing((Fraction(0), Fraction(1, 2), Fraction(3)))
        curve = boundary_curve(parse_surface(SADDLE), spacing)
        self.assertEqual(curve.spacing, spacing)
        self.assertLessEqual(curve.gamma_bar.total_degree, 2)

    def test_homogeneous_route_agrees_with_dual_points(self):
        surface = parse_surface(SADDLE)
        curve = boundary_curve(surface)
        psq = psq_symbolic(surface)
        # rational points of F = 0 and sigma' = 0: (x - 2)^2 - (y - 4)^2 = -12
        for t in (Fraction(1), Fraction(-5), Fraction(3, 5), Fraction(7, 2)):
            u, v = t, 12 / t
            x, y = (v - u + 4) / 2, (u + v + 8) / 2
            point = (x, y, (y * y - x * x) / 4)
            self.assertEqual(surface.F.evaluate(point), 0)
            self.assertEqual(curve.sigma_prime.evaluate(point), 0)
            self.assertEqual(curve.homogeneous.evaluate(psq.evaluate(point)), 0)

    def test_ideal_contact_point_of_sphere(self):
        curve = boundary_curve(parse_surface(SPHERE))
        dual = psq_symbolic(parse_surface(SPHERE)).evaluate((1, 0, -1))
        self.assertEqual(dual, (-4, 4, 0))
        self.assertEqual(curve.homogeneous.evaluate(dual), 0)

    def test_record_serializes(self):
        record = json.loads(json.dumps(boundary_curve(parse_surface(SADDLE)).asdict(), cls=RationalJsonEncoder))
        self.assertEqual(record["boundary"], "4*x^2 - 4*x*y + y^2 - 16*x - 4*y + 16")
        self.assertEqual(record["gamma"]["F"], "x^2 - y^2 + 4*z")
        self.assertEqual(record["spacing"], [0, 1, 2])
        self.assertEqual(record["discriminant"], 0)
        self.assertIsNone(record["degenerate"])

    def test_ideal_factor_record(self):
        factor = IdealFactor(Polynomial.variable(3, 2), 2)
        self.assertTrue(factor.at_infinity)
        self.assertEqual(factor.asdict(), {"factor": "psi", "multiplicity": 2})
        self.assertFalse(IdealFactor(Polynomial.variable(3, 1), 1).at_infinity)

    def test_random_quadrics(self):
        rng = random.Random(30)
        produced = 0
        for _ in range(200):
            surface = random_quadric(rng)
            try:
                curve = boundary_curve(surface)
            except BoundaryError:
                continue
            produced += 1
            self.assertLessEqual(curve.gamma_bar.total_degree, 2)
            self.assertLessEqual(curve.homogeneous.total_degree, 2)
            self.assertEqual(curve.gamma_bar, curve.gamma_bar.normalize())
            doubled = boundary_curve(QuadricSurface(surface.F.scale(2)))
            self.assertEqual(doubled.gamma_bar, curve.gamma_bar)
        self.assertGreater(produced, 50)
