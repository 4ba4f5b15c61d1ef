import random
import unittest
from fractions import Fraction

from pcoords_quadrics.errors import (
    NonPolynomialError,
    SurfaceParseError,
    UnknownVariableError,
    UnsupportedDegreeError,
    UsageError,
)
from pcoords_quadrics.parsing import (
    default_names,
    format_polynomial,
    parse_polynomial,
    parse_surface,
    tokenize,
)
from pcoords_quadrics.polycore import ALIAS_NAMES, Polynomial


def xyz():
    return [Polynomial.variable(3, i) for i in range(3)]


def random_quadratic(rng, nvars, variables=None):
    variables = list(range(nvars)) if variables is None else variables
    result = Polynomial.zero(nvars)
    for _ in range(rng.randint(1, 6)):
        exponent = [0] * nvars
        for _ in range(rng.randint(0, 2)):
            exponent[rng.choice(variables)] += 1
        coefficient = Fraction(rng.randint(-12, 12), rng.choice([1, 1, 2, 3, 5]))
        result = result + Polynomial(nvars, {tuple(exponent): coefficient})
    return result


class TestTokenize(unittest.TestCase):
    def test_tokens_and_positions(self):
        tokens = tokenize("x**2 + 3y")
        self.assertEqual(
            [(t.kind, t.text, t.position) for t in tokens],
            [
                ("name", "x", 0),
                ("op", "^", 1),
                ("number", "2", 3),
                ("op", "+", 5),
                ("number", "3", 7),
                ("name", "y", 8),
                ("end", "", 9),
            ],
        )

    def test_unexpected_character(self):
        with self.assertRaises(SurfaceParseError) as context:
            tokenize("x # 1")
        self.assertEqual(context.exception.position, 2)


class TestParseSurface(unittest.TestCase):
    def setUp(self):
        self.x, self.y, self.z = xyz()

    def test_explicit_saddle(self):
        surface = parse_surface("z = -(x/2)^2 + (y/2)^2")
        self.assertEqual(surface.F, self.x ** 2 - self.y ** 2 + 4 * self.z)
        self.assertEqual(surface.text, "x^2 - y^2 + 4*z")

    def test_sphere(self):
        surface = parse_surface("x^2 + y^2 + z^2 = 2")
        self.assertEqual(surface.F, self.x ** 2 + self.y ** 2 + self.z ** 2 - 2)
        self.assertEqual(surface.nvars, 3)
        self.assertFalse(surface.is_plane)

    def test_two_sheet_hyperboloid(self):
        surface = parse_surface("x^2 - 4y^2 + 2z^2 = -2")
        self.assertEqual(surface.F, self.x ** 2 - 4 * self.y ** 2 + 2 * self.z ** 2 + 2)

    def test_denominators_cleared_and_sign_normalized(self):
        surface = parse_surface("-x^2/3 + 0.5*y = z")
        self.assertEqual(surface.F, 2 * self.x ** 2 - 3 * self.y + 6 * self.z)

    def test_bare_expression_means_equal_zero(self):
        self.assertEqual(parse_surface("x^2 + y^2 - z").F, parse_surface("x^2 + y^2 = z").F)

    def test_parenthesized_exponent_and_power_synonym(self):
        self.assertEqual(parse_surface("x^(2) + y**2 = z").F, parse_surface("x^2 + y^2 = z").F)

    def test_implicit_multiplication(self):
        self.assertEqual(parse_surface("2x y + 3(z - 1) = 0").F, 2 * self.x * self.y + 3 * self.z - 3)

    def test_plane(self):
        surface = parse_surface("4z = 0")
        self.assertTrue(surface.is_plane)
        self.assertEqual(surface.F, self.z)

    def test_indexed_names(self):
        surface = parse_surface("x1^2 + x2^2 + x3^2 + x4^2 = 1")
        self.assertEqual(surface.nvars, 4)
        self.assertEqual(surface.names, ("x1", "x2", "x3", "x4"))
        self.assertEqual(parse_surface("x1^2 - x2 = 0").nvars, 3)
        self.assertEqual(parse_surface("x1^2 - x2 = 0", nvars=5).nvars, 5)

    def test_indexed_and_alias_agree_for_three_variables(self):
        self.assertEqual(parse_surface("x1^2 - x2^2 + 4x3").F, parse_surface("x^2 - y^2 + 4z").F)


class TestParseErrors(unittest.TestCase):
    def test_unsupported_degree(self):
        with self.assertRaises(UnsupportedDegreeError) as context:
            parse_surface("x^3 = 1")
        self.assertIn("unsupported degree", str(context.exception))

    def test_runaway_power(self):
        with self.assertRaises(UnsupportedDegreeError):
            parse_surface("(x^2 + y)^9 = 0")

    def test_nonpolynomial_division(self):
        with self.assertRaises(NonPolynomialError) as context:
            parse_surface("x / y = 1")
        self.assertIn("nonpolynomial input", str(context.exception))
        self.assertEqual(context.exception.position, 4)

    def test_nonpolynomial_exponent(self):
        for text in ("x^y = 1", "x^-1 = 1", "x^0.5 = 1"):
            with self.subTest(text=text), self.assertRaises(NonPolynomialError):
                parse_surface(text)

    def test_division_by_zero(self):
        with self.assertRaises(SurfaceParseError):
            parse_surface("x / 0 = 1")

    def test_unknown_variable(self):
        with self.assertRaises(UnknownVariableError) as context:
            parse_surface("x + w = 1")
        self.assertEqual(context.exception.position, 4)
        with self.assertRaises(UnknownVariableError):
            parse_surface("x5 = x1^2", nvars=3)

    def test_mixed_naming(self):
        with self.assertRaises(SurfaceParseError) as context:
            parse_surface("x + x2 = 0")
        self.assertIn("mixed variable naming", str(context.exception))

    def test_alias_names_need_three_variables(self):
        with self.assertRaises(UsageError):
            parse_surface("x^2 + y = z", nvars=4)

    def test_syntax_error_position(self):
        with self.assertRaises(SurfaceParseError) as context:
            parse_surface("x + = 1")
        self.assertEqual(context.exception.position, 4)
        self.assertIn("(at position 4)", str(context.exception))

    def test_unbalanced_parenthesis(self):
        with self.assertRaises(SurfaceParseError):
            parse_surface("(x + y = 1")

    def test_trivial_equation(self):
        with self.assertRaises(SurfaceParseError):
            parse_surface("x - x = 1 - 1")


class TestParserProperties(unittest.TestCase):
    def test_format_then_parse_is_identity(self):
        rng = random.Random(20)
        for trial in range(500):
            nvars = 3 if trial % 2 else rng.randint(3, 6)
            names = default_names(nvars)
            polynomial = random_quadratic(rng, nvars)
            text = format_polynomial(polynomial, names)
            self.assertEqual(parse_polynomial(text, names), polynomial, text)

    def test_equation_equals_difference(self):
        rng = random.Random(21)
        for _ in range(100):
            lhs = format_polynomial(random_quadratic(rng, 3), ALIAS_NAMES)
            rhs = format_polynomial(random_quadratic(rng, 3), ALIAS_NAMES)
            self.assertEqual(
                parse_polynomial(f"{lhs} = {rhs}", ALIAS_NAMES),
                parse_polynomial(f"{lhs} - ({rhs}) = 0", ALIAS_NAMES),
            )

    def test_explicit_graph_vanishes_on_its_points(self):
        rng = random.Random(22)
        for _ in range(100):
            f = random_quadratic(rng, 3, variables=[0, 1])
            if f.total_degree < 0:
                continue
            surface = parse_surface(f"z = {format_polynomial(f, ALIAS_NAMES)}")
            a = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
            b = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
            self.assertEqual(surface.F.evaluate((a, b, f.evaluate((a, b, 0)))), 0)
