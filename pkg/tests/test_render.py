import json
import os
import unittest

from pcoords_quadrics.boundary import boundary_curve
from pcoords_quadrics.errors import UsageError
from pcoords_quadrics.models import AxisSpacing, BoundaryCurve, SampleConfig, Viewport
from pcoords_quadrics.parsing import parse_polynomial, parse_surface
from pcoords_quadrics.polycore import CONIC_NAMES
from pcoords_quadrics.render import (
    build_scene,
    conic_trace,
    fit_viewport,
    polyline_image,
    render_svg,
    scene_json,
)
from pcoords_quadrics.sampler import dual_cloud

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")
SPHERE = "x^2 + y^2 + z^2 = 2"


class TestGeometry(unittest.TestCase):
    def test_polyline_image(self):
        self.assertEqual(
            polyline_image((1, 2, 3), AxisSpacing.default(3)),
            [(0.0, 1.0), (1.0, 2.0), (2.0, 3.0)],
        )

    def test_polyline_arity(self):
        with self.assertRaises(UsageError):
            polyline_image((1, 2), AxisSpacing.default(3))

    def test_default_viewport(self):
        viewport = fit_viewport(AxisSpacing.default(3))
        self.assertEqual(
            (viewport.x_min, viewport.x_max, viewport.y_min, viewport.y_max),
            (-0.5, 2.5, -4.8, 4.8),
        )

    def test_viewport_covers_polylines(self):
        viewport = fit_viewport(AxisSpacing.default(3), polylines=[(10, -7, 0)])
        self.assertTrue(viewport.contains(2, 10))
        self.assertTrue(viewport.contains(0, -7))

    def test_viewport_to_page(self):
        viewport = Viewport(0, 1, 0, 1, width=100, height=100, margin=10)
        self.assertEqual(viewport.to_page(0, 0), (10, 90))
        self.assertEqual(viewport.to_page(1, 1), (90, 10))

    def test_degenerate_viewport(self):
        with self.assertRaises(UsageError):
            Viewport(1, 1, 0, 1)


class TestConicTrace(unittest.TestCase):
    def test_sphere_boundary_has_two_branches(self):
        curve = boundary_curve(parse_surface(SPHERE))
        viewport = Viewport(-1, 3, -3, 3)
        strips = conic_trace(curve, viewport, steps=128)
        self.assertEqual(len(strips), 2)
        for strip in strips:
            self.assertGreater(len(strip), 10)
            for x, y in strip:
                self.assertLess(abs(curve.numeric.at((x, y))), 0.05)
                self.assertTrue(viewport.contains(x, y))

    def test_ellipse_is_closed(self):
        curve = BoundaryCurve(
            surface=parse_surface(SPHERE),
            spacing=AxisSpacing.default(3),
            gamma_bar=parse_polynomial("x^2 + y^2 - 1", CONIC_NAMES),
        )
        (strip,) = conic_trace(curve, Viewport(-2, 2, -2, 2), steps=64)
        self.assertEqual(strip[0], strip[-1])

    def test_conic_without_real_points(self):
        curve = BoundaryCurve(
            surface=parse_surface(SPHERE),
            spacing=AxisSpacing.default(3),
            gamma_bar=parse_polynomial("x^2 + y^2 + 1", CONIC_NAMES),
        )
        self.assertEqual(conic_trace(curve, Viewport(-2, 2, -2, 2), steps=32), [])

    def test_degenerate_boundary(self):
        curve = boundary_curve(parse_surface("4z = 0"))
        self.assertEqual(conic_trace(curve, Viewport(-2, 2, -2, 2)), [])


class TestSvgRendering(unittest.TestCase):
    def setUp(self):
        self.surface = parse_surface(SPHERE)
        self.spacing = AxisSpacing.default(3)
        self.curve = boundary_curve(self.surface)

    def test_plane_golden(self):
        scene = build_scene(
            self.spacing,
            curve=boundary_curve(parse_surface("4z = 0")),
            polylines=[(1, 0, -1)],
            title="plane",
        )
        path = os.path.join(GOLDEN_DIR, "plane.svg")
        if not os.path.exists(path):
            self.fail(f"Golden file {path} is missing")
        with open(path, encoding="utf-8") as f:
            self.assertEqual(render_svg(scene), f.read())

    def test_sphere_rendering_is_deterministic(self):
        scene = build_scene(
            self.spacing,
            curve=self.curve,
            polylines=[(1, 0, -1)],
            title="sphere",
            resolution=64,
        )
        svg = render_svg(scene)
        self.assertEqual(svg, render_svg(scene))
        self.assertIn('<path class="conic"', svg)

    def test_document_elements(self):
        cloud = dual_cloud(
            self.surface, [(1.0, 1.0, 0.0), (1.0, -1.0, 0.0)], config=SampleConfig(refine=0)
        )
        svg = render_svg(build_scene(self.spacing, cloud=cloud, curve=self.curve, resolution=32))
        self.assertTrue(svg.startswith('<?xml version="1.0" encoding="UTF-8"?>'))
        self.assertEqual(svg.count('class="axis"'), 3)
        self.assertIn("X̄3", svg)
        self.assertEqual(svg.count('<circle class="interior"'), 1)
        self.assertIn('<path class="ideal"', svg)
        self.assertIn("<desc>clipped=0</desc>", svg)
        self.assertIn("3*x^2 - 3*y^2 - 6*x + 5 = 0", svg)

    def test_clipped_points_are_counted(self):
        cloud = dual_cloud(self.surface, [(1.0, 1.0, 0.0)], config=SampleConfig(refine=0))
        scene = build_scene(self.spacing, cloud=cloud, viewport=Viewport(5, 6, 5, 6))
        self.assertIn("<desc>clipped=1</desc>", render_svg(scene))

    def test_plane_draws_its_indexed_point(self):
        curve = boundary_curve(parse_surface("4z = 0"))
        svg = render_svg(build_scene(self.spacing, curve=curve))
        self.assertIn('<circle class="boundary"', svg)
        self.assertIn('r="5.0"', svg)

    def test_scene_json(self):
        record = json.loads(scene_json(build_scene(self.spacing, curve=self.curve, polylines=[(1, 2, 3)])))
        self.assertEqual(record["polylines"], [[1.0, 2.0, 3.0]])
        self.assertEqual(record["curve"]["boundary"], "3*x^2 - 3*y^2 - 6*x + 5")
        self.assertIsNone(record["cloud"])
