import unittest

from pcoords_quadrics.boundary import boundary_curve
from pcoords_quadrics.models import SampleConfig, ValidationSummary
from pcoords_quadrics.parsing import parse_polynomial, parse_surface
from pcoords_quadrics.polycore import CONIC_NAMES
from pcoords_quadrics.suite import SUITE_CASES, SuiteCase, SuiteResult, run_case, run_suite


class TestSuiteCases(unittest.TestCase):
    def test_expected_boundaries_are_the_computed_ones(self):
        for case in SUITE_CASES:
            with self.subTest(case=case.name):
                self.assertEqual(boundary_curve(parse_surface(case.equation)).text, case.boundary)

    def test_saddle_caption_is_the_same_conic(self):
        saddle = SUITE_CASES[0]
        self.assertEqual(
            parse_polynomial(saddle.published_caption, CONIC_NAMES),
            parse_polynomial(saddle.boundary, CONIC_NAMES),
        )

    def test_wrong_expectation_fails(self):
        case = SuiteCase("sphere", "x^2 + y^2 + z^2 = 2", "x^2 - 4*x*y + y^2 + 1", "")
        result = run_case(case, SampleConfig(count=50))
        self.assertFalse(result.passed)
        self.assertIsNone(result.validation)
        self.assertIn("expected x^2 - 4*x*y + y^2 + 1", result.line())

    def test_parse_error_is_reported(self):
        result = run_case(SuiteCase("cubic", "x^3 = 1", "x", ""), SampleConfig(count=50))
        self.assertFalse(result.passed)
        self.assertTrue(result.line().startswith("FAIL cubic:"))
        self.assertIn("unsupported degree", result.error)


class TestSuiteResult(unittest.TestCase):
    def test_pass_line(self):
        summary = ValidationSummary(
            passed=True,
            n_hits=12,
            n_checked=12,
            max_residual=3.5e-9,
            n_interior=900,
            interior_off_curve_fraction=1.0,
            tolerance=1e-6,
        )
        result = SuiteResult(SUITE_CASES[1], True, "3*x^2 - 3*y^2 - 6*x + 5", summary)
        self.assertEqual(
            result.line(), "PASS sphere: 3*x^2 - 3*y^2 - 6*x + 5 = 0 [hits 12, max residual 3.50e-09]"
        )

    def test_results_keep_case_order(self):
        results = run_suite(SampleConfig(count=300, seed=1), workers=2)
        self.assertEqual([result.case.name for result in results], [case.name for case in SUITE_CASES])
        for result in results:
            self.assertEqual(result.boundary, result.case.boundary)

    def test_every_case_passes_with_the_full_sample_count(self):
        config = SampleConfig()
        results = run_suite(config)
        for result in results:
            with self.subTest(case=result.case.name):
                self.assertTrue(result.passed, result.line())
                self.assertGreaterEqual(result.n_points, config.count)
                self.assertGreater(result.validation.n_checked, 0)
