import io
import unittest

import numpy as np

from pcoords_quadrics.boundary import boundary_curve
from pcoords_quadrics.errors import UsageError
from pcoords_quadrics.models import BoundaryCurve, ProjectivePoint, SampleConfig, SampleMode
from pcoords_quadrics.parsing import parse_polynomial, parse_surface
from pcoords_quadrics.polycore import CONIC_NAMES
from pcoords_quadrics.sampler import (
    attach_curve_residual,
    dual_cloud,
    sample_surface,
    split_linear,
    validate_boundary,
    write_cloud_csv,
)

SADDLE = "z = -(x/2)^2 + (y/2)^2"
SPHERE = "x^2 + y^2 + z^2 = 2"


class TestSampleConfig(unittest.TestCase):
    def test_defaults(self):
        config = SampleConfig()
        self.assertEqual(config.mode, SampleMode.BUILTIN_PARAM)
        self.assertEqual(config.domain_for(3), [(-4.0, 4.0)] * 3)

    def test_single_interval_is_repeated(self):
        config = SampleConfig(domain=((-1, 2),))
        self.assertEqual(config.domain_for(4), [(-1.0, 2.0)] * 4)

    def test_invalid_settings(self):
        for changes in ({"count": 0}, {"workers": 0}, {"refine": -1}, {"tol_curve": 0.0}, {"domain": ((1, 1),)}):
            with self.subTest(changes=changes), self.assertRaises(UsageError):
                SampleConfig(**changes)

    def test_domain_length_mismatch(self):
        with self.assertRaises(UsageError):
            SampleConfig(domain=((-1, 1), (-1, 1))).domain_for(3)

    def test_mode_parse(self):
        self.assertEqual(SampleMode.parse("implicit-scan"), SampleMode.IMPLICIT_SCAN)
        with self.assertRaises(UsageError):
            SampleMode.parse("random")


class TestSurfaceSamplers(unittest.TestCase):
    def test_explicit_grid_saddle(self):
        surface = parse_surface(SADDLE)
        config = SampleConfig(mode=SampleMode.EXPLICIT_GRID, domain=((-2, 2),), count=25)
        points = sample_surface(surface, config)
        self.assertEqual(points.shape, (25, 3))
        np.testing.assert_allclose(points[:, 2], (points[:, 1] ** 2 - points[:, 0] ** 2) / 4, atol=1e-12)
        self.assertEqual(sorted(set(np.round(points[:, 0], 12))), [-2.0, -1.0, 0.0, 1.0, 2.0])

    def test_explicit_grid_needs_a_linear_variable(self):
        with self.assertRaises(UsageError):
            sample_surface(parse_surface(SPHERE), SampleConfig(mode=SampleMode.EXPLICIT_GRID))

    def test_split_linear(self):
        surface = parse_surface(SADDLE)
        a, b = split_linear(surface.F, 2)
        self.assertEqual(a, parse_polynomial("4", ("x", "y", "z")))
        self.assertEqual(b, parse_polynomial("x^2 - y^2", ("x", "y", "z")))

    def test_builtin_sphere(self):
        surface = parse_surface(SPHERE)
        points = sample_surface(surface, SampleConfig(count=100))
        self.assertEqual(points.shape, (100, 3))
        self.assertLessEqual(np.abs(surface.numeric(points)).max(), 1e-10)

    def test_builtin_hyperboloids(self):
        for text in ("x^2 + y^2 - z^2 = 1", "x^2 - 4y^2 + 2z^2 = -2", "x1^2 + x2^2 - x3^2 + x4^2 = 1"):
            with self.subTest(text=text):
                surface = parse_surface(text)
                points = sample_surface(surface, SampleConfig(count=200, seed=5))
                self.assertGreater(len(points), 0)
                self.assertLessEqual(np.abs(surface.numeric(points)).max(), 1e-10)
                self.assertTrue(np.all(np.abs(points) <= 4.0))

    def test_hyperboloids_reach_the_requested_count(self):
        for text in ("x^2 + y^2 - z^2 = 1", "x^2 - 4y^2 + 2z^2 = -2"):
            with self.subTest(text=text):
                surface = parse_surface(text)
                points = sample_surface(surface, SampleConfig())
                self.assertEqual(points.shape, (1000, 3))
                self.assertTrue(np.all(np.abs(points) <= 4.0))

    def test_plane_graph_reaches_the_requested_count(self):
        points = sample_surface(parse_surface("x + y + z = 1"), SampleConfig(count=100, seed=7))
        self.assertEqual(points.shape, (100, 3))

    def test_implicit_scan(self):
        surface = parse_surface("x^2 + 2x y + 3y^2 - z^2 = 1")
        config = SampleConfig(mode=SampleMode.IMPLICIT_SCAN, count=300, seed=2)
        points = sample_surface(surface, config)
        self.assertGreater(len(points), 0)
        self.assertLessEqual(len(points), 300)
        self.assertLessEqual(np.abs(surface.numeric(points)).max(), 1e-10)

    def test_surface_without_real_points(self):
        surface = parse_surface("x^2 + y^2 + z^2 = -1")
        for mode in (SampleMode.IMPLICIT_SCAN, SampleMode.BUILTIN_PARAM):
            with self.subTest(mode=mode):
                with self.assertLogs(level="WARNING"):
                    points = sample_surface(surface, SampleConfig(mode=mode, count=50))
                self.assertEqual(points.shape, (0, 3))

    def test_deterministic_by_seed(self):
        surface = parse_surface(SPHERE)
        first = sample_surface(surface, SampleConfig(count=50, seed=11))
        second = sample_surface(surface, SampleConfig(count=50, seed=11))
        other = sample_surface(surface, SampleConfig(count=50, seed=12))
        np.testing.assert_array_equal(first, second)
        self.assertFalse(np.array_equal(first, other))


class TestDualCloud(unittest.TestCase):
    def setUp(self):
        self.saddle = parse_surface(SADDLE)
        self.sphere = parse_surface(SPHERE)
        self.config = SampleConfig(refine=0)

    def test_saddle_origin_is_a_boundary_hit(self):
        report = dual_cloud(self.saddle, [(0.0, 0.0, 0.0)], config=self.config)
        (sample,) = report.samples
        self.assertTrue(sample.is_boundary)
        self.assertFalse(sample.is_ideal)
        self.assertEqual(sample.dual.affine(), (2.0, 0.0))

    def test_sphere_interior_and_ideal(self):
        report = dual_cloud(self.sphere, [(1.0, 1.0, 0.0), (1.0, -1.0, 0.0)], config=self.config)
        interior, ideal = report.samples
        self.assertFalse(interior.is_boundary)
        self.assertFalse(interior.is_ideal)
        self.assertEqual(interior.dual.affine(), (0.5, 1.0))
        self.assertTrue(ideal.is_ideal)
        self.assertEqual(report.n_ideal, 1)
        self.assertEqual(len(report.interior), 2)

    def test_off_surface_points_are_skipped(self):
        with self.assertLogs(level="WARNING"):
            report = dual_cloud(self.sphere, [(1.0, 1.0, 0.0), (1.0, 1.0, 1.0)], config=self.config)
        self.assertEqual(len(report.samples), 1)

    def test_singular_points_are_counted(self):
        cone = parse_surface("x^2 + y^2 = z^2")
        report = dual_cloud(cone, [(0.0, 0.0, 0.0), (3.0, 4.0, 5.0)], config=self.config)
        self.assertEqual(report.n_singular, 1)
        self.assertEqual(len(report.samples), 1)
        self.assertTrue(report.samples[0].is_boundary)

    def test_developable_surfaces_are_all_boundary(self):
        cases = {
            "x^2 + y^2 = z^2": [(3.0, 4.0, 5.0), (0.6, 0.8, -1.0)],
            "x^2 + y^2 = 1": [(1.0, 0.0, 0.0), (0.0, -1.0, 2.5)],
            "x + y + z = 1": [(1.0, 0.0, 0.0), (0.5, 0.25, 0.25)],
        }
        for text, points in cases.items():
            with self.subTest(surface=text):
                report = dual_cloud(parse_surface(text), points, config=SampleConfig(refine=32))
                self.assertEqual(len(report.samples), 2)
                self.assertTrue(all(sample.is_boundary for sample in report.samples))
                self.assertFalse(any(sample.refined for sample in report.samples))
                self.assertEqual([sample.jac for sample in report.samples], [0.0, 0.0])

    def test_point_shape_mismatch(self):
        with self.assertRaises(UsageError):
            dual_cloud(self.sphere, [(1.0, 1.0, 0.0, 0.0)])

    def test_refined_samples_are_appended_on_the_contact_curve(self):
        points = sample_surface(self.sphere, SampleConfig(count=200, seed=1))
        report = dual_cloud(self.sphere, points, config=SampleConfig(refine=8))
        refined = [sample for sample in report.samples if sample.refined]
        self.assertGreater(len(refined), 0)
        self.assertEqual(list(report.samples[: len(points)]), [s for s in report.samples if not s.refined])
        for sample in refined:
            self.assertTrue(sample.is_boundary)
            self.assertLessEqual(abs(self.sphere.numeric.at(sample.point)), 1e-10)

    def test_workers_do_not_change_the_cloud(self):
        points = sample_surface(self.sphere, SampleConfig(count=60, seed=4))
        single = dual_cloud(self.sphere, points, config=SampleConfig(workers=1))
        pooled = dual_cloud(self.sphere, points, config=SampleConfig(workers=4))
        self.assertEqual(single.csv_rows(), pooled.csv_rows())

    def test_more_variables(self):
        surface = parse_surface("x1^2 + x2^2 + x3^2 + x4^2 = 1")
        report = dual_cloud(surface, [(0.0, 0.0, 0.0, 1.0), (0.5, 0.5, 0.5, 0.5)])
        self.assertEqual(len(report.samples), 2)
        self.assertFalse(any(sample.refined for sample in report.samples))
        self.assertTrue(report.samples[0].dual.isclose(ProjectivePoint(6.0, 2.0, 2.0)))

    def test_csv_output(self):
        report = dual_cloud(self.saddle, [(0.0, 0.0, 0.0)], config=self.config)
        stream = io.StringIO()
        write_cloud_csv(report, stream)
        header, row = stream.getvalue().splitlines()
        self.assertEqual(header, "x1,x2,x3,eta,xi,psi,jac,is_boundary,is_ideal")
        fields = row.split(",")
        self.assertEqual([abs(float(value)) for value in fields[:6]], [0.0, 0.0, 0.0, 8.0, 0.0, 4.0])
        self.assertEqual(fields[7:], ["true", "false"])


class TestValidateBoundary(unittest.TestCase):
    def setUp(self):
        self.sphere = parse_surface(SPHERE)
        points = sample_surface(self.sphere, SampleConfig(count=400, seed=3))
        self.report = dual_cloud(self.sphere, points)

    def test_sphere_boundary_verifies(self):
        summary = validate_boundary(self.report, boundary_curve(self.sphere))
        self.assertTrue(summary.passed, summary.reason)
        self.assertGreater(summary.n_checked, 0)
        self.assertLessEqual(summary.max_residual, 1e-6)
        self.assertGreaterEqual(summary.interior_off_curve_fraction, 0.99)

    def test_wrong_conic_fails(self):
        curve = BoundaryCurve(
            surface=self.sphere,
            spacing=self.report.spacing,
            gamma_bar=parse_polynomial("x^2 + y^2 - 1", CONIC_NAMES),
        )
        summary = validate_boundary(self.report, curve)
        self.assertFalse(summary.passed)
        self.assertIn("max residual", summary.reason)
        self.assertGreater(len(summary.failures), 0)

    def test_mismatched_surface(self):
        with self.assertRaises(UsageError) as context:
            validate_boundary(self.report, boundary_curve(parse_surface(SADDLE)))
        self.assertIn("mismatched surface identity", str(context.exception))

    def test_summary_record(self):
        record = validate_boundary(self.report, boundary_curve(self.sphere)).asdict()
        self.assertEqual(record["failures"], [])
        self.assertEqual(record["tolerance"], 1e-6)

    def test_attach_curve_residual(self):
        report = attach_curve_residual(self.report, boundary_curve(self.sphere))
        self.assertIsNotNone(report.max_curve_residual)
        self.assertLessEqual(report.max_curve_residual, 1e-6)
        self.assertEqual(report.samples, self.report.samples)
        self.assertEqual(report.asdict()["max_curve_residual"], report.max_curve_residual)

    def test_attach_curve_residual_without_hits(self):
        report = dual_cloud(self.sphere, [(1.0, 1.0, 0.0)], config=SampleConfig(refine=0))
        self.assertIsNone(attach_curve_residual(report, boundary_curve(self.sphere)).max_curve_residual)

    def test_attach_curve_residual_mismatched_surface(self):
        with self.assertRaises(UsageError):
            attach_curve_residual(self.report, boundary_curve(parse_surface(SADDLE)))
