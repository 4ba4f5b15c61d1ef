from __future__ import annotations

import json
import math
from typing import List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

from pcoords_quadrics.models import AxisSpacing, BoundaryCurve, CloudReport, Scene, Viewport
from pcoords_quadrics.render.contour import DEFAULT_RESOLUTION, conic_trace
from pcoords_quadrics.render.geometry import fit_viewport, polyline_image
from pcoords_quadrics.render.scene_renderer import SceneRenderer
from pcoords_quadrics.utils import RationalJsonEncoder

ARROW_LENGTH = 12.0
ARROW_WING = 4.0
INTERIOR_RADIUS = 1.5
BOUNDARY_RADIUS = 2.5
STYLE = (
    ".axis{stroke:#000;stroke-width:1}"
    ".label{font:12px sans-serif;text-anchor:middle}"
    ".polyline{fill:none;stroke:#36c;stroke-width:1}"
    ".interior{fill:#9ab}"
    ".boundary{fill:#c22}"
    ".ideal{fill:none;stroke:#c82;stroke-width:1}"
    ".conic{fill:none;stroke:#111;stroke-width:1.5}"
)


def _fmt(value: float) -> str:
    text = f"{value:.3f}"
    return "0.000" if text == "-0.000" else text


def _path(points: Sequence[Tuple[float, float]]) -> str:
    head, *rest = points
    return f"M{_fmt(head[0])},{_fmt(head[1])}" + "".join(
        f" L{_fmt(x)},{_fmt(y)}" for x, y in rest
    )


class SvgSceneRenderer(SceneRenderer):
    """
    Deterministic SVG 1.1 output using line, circle, path and text elements.

    Cloud points outside the viewport are not drawn; their number is written
    to the document description. Ideal duals become arrows on the page edge
    pointing in their direction at infinity.
    """

    def render(self, scene: Scene) -> str:
        viewport = scene.viewport
        body: List[str] = []
        body.extend(self._axes(scene.spacing, viewport))
        body.extend(self._polylines(scene, viewport))
        clipped = 0
        if scene.cloud is not None:
            cloud_lines, clipped = self._cloud(scene.cloud, viewport)
            body.extend(cloud_lines)
        if scene.curve is not None:
            body.extend(self._curve(scene.curve, viewport, scene.resolution))

        header = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{viewport.width}" height="{viewport.height}" '
            f'viewBox="0 0 {viewport.width} {viewport.height}">',
            f"<title>{escape(scene.title)}</title>",
            f"<desc>clipped={clipped}</desc>",
            f"<style>{STYLE}</style>",
        ]
        return "\n".join(header + body + ["</svg>"]) + "\n"

    def _axes(self, spacing: AxisSpacing, viewport: Viewport) -> List[str]:
        lines = ['<g class="axes">']
        for index, d in enumerate(spacing.d):
            x, top = viewport.to_page(float(d), viewport.y_max)
            _, bottom = viewport.to_page(float(d), viewport.y_min)
            lines.append(
                f'<line class="axis" x1="{_fmt(x)}" y1="{_fmt(top)}" '
                f'x2="{_fmt(x)}" y2="{_fmt(bottom)}"/>'
            )
            lines.append(
                f'<text class="label" x="{_fmt(x)}" y="{_fmt(bottom + 16)}">'
                f"X̄{index + 1}</text>"
            )
        lines.append("</g>")
        return lines

    def _polylines(self, scene: Scene, viewport: Viewport) -> List[str]:
        if not scene.polylines:
            return []
        lines = ['<g class="polylines">']
        for point in scene.polylines:
            vertices = [viewport.to_page(x, y) for x, y in polyline_image(point, scene.spacing)]
            lines.append(f'<path class="polyline" d="{_path(vertices)}"/>')
        lines.append("</g>")
        return lines

    def _cloud(self, cloud: CloudReport, viewport: Viewport) -> Tuple[List[str], int]:
        dots = ['<g class="cloud">']
        arrows = ['<g class="ideal">']
        clipped = 0
        ordered = [s for s in cloud.samples if not s.is_boundary] + cloud.boundary_hits
        for sample in ordered:
            if sample.is_ideal:
                arrow = self._arrow(sample.dual.eta, sample.dual.xi, viewport)
                if arrow:
                    arrows.append(arrow)
                continue
            x, y = sample.dual.affine()
            if not viewport.contains(x, y):
                clipped += 1
                continue
            px, py = viewport.to_page(x, y)
            kind, radius = (
                ("boundary", BOUNDARY_RADIUS) if sample.is_boundary else ("interior", INTERIOR_RADIUS)
            )
            dots.append(f'<circle class="{kind}" cx="{_fmt(px)}" cy="{_fmt(py)}" r="{radius}"/>')
        dots.append("</g>")
        arrows.append("</g>")
        return dots + (arrows if len(arrows) > 2 else []), clipped

    def _arrow(self, eta: float, xi: float, viewport: Viewport) -> str:
        span_x = (viewport.width - 2 * viewport.margin) / (viewport.x_max - viewport.x_min)
        span_y = (viewport.height - 2 * viewport.margin) / (viewport.y_max - viewport.y_min)
        dx, dy = float(eta) * span_x, -float(xi) * span_y
        length = math.hypot(dx, dy)
        if length == 0:
            return ""
        ux, uy = dx / length, dy / length
        cx, cy = viewport.width / 2, viewport.height / 2
        reach: List[float] = []
        if ux:
            reach.append(((viewport.width - viewport.margin if ux > 0 else viewport.margin) - cx) / ux)
        if uy:
            reach.append(((viewport.height - viewport.margin if uy > 0 else viewport.margin) - cy) / uy)
        t = min(reach)
        tip = (cx + t * ux, cy + t * uy)
        tail = (tip[0] - ARROW_LENGTH * ux, tip[1] - ARROW_LENGTH * uy)
        wing_a = (tip[0] - ARROW_WING * (ux - uy), tip[1] - ARROW_WING * (uy + ux))
        wing_b = (tip[0] - ARROW_WING * (ux + uy), tip[1] - ARROW_WING * (uy - ux))
        return (
            f'<path class="ideal" d="{_path([tail, tip])} {_path([wing_a, tip, wing_b])}"/>'
        )

    def _curve(self, curve: BoundaryCurve, viewport: Viewport, resolution: int) -> List[str]:
        if curve.gamma_bar is None:
            if curve.indexed_point is None or curve.indexed_point.is_ideal:
                return []
            x, y = curve.indexed_point.affine()
            px, py = viewport.to_page(float(x), float(y))
            return [f'<circle class="boundary" cx="{_fmt(px)}" cy="{_fmt(py)}" r="{BOUNDARY_RADIUS * 2}"/>']
        lines = [f'<g class="conic"><title>{escape(curve.text or "")} = 0</title>']
        for strip in conic_trace(curve, viewport, resolution):
            if len(strip) < 2:
                continue
            page = [viewport.to_page(x, y) for x, y in strip]
            lines.append(f'<path class="conic" d="{_path(page)}"/>')
        lines.append("</g>")
        return lines


def build_scene(
    spacing: AxisSpacing,
    cloud: Optional[CloudReport] = None,
    curve: Optional[BoundaryCurve] = None,
    polylines: Sequence[Sequence[float]] = (),
    title: str = "",
    resolution: int = DEFAULT_RESOLUTION,
    viewport: Optional[Viewport] = None,
) -> Scene:
    viewport = viewport or fit_viewport(spacing, cloud, curve, polylines)
    return Scene(
        spacing=spacing,
        viewport=viewport,
        cloud=cloud,
        curve=curve,
        polylines=tuple(tuple(float(v) for v in p) for p in polylines),
        title=title,
        resolution=resolution,
    )


def render_svg(scene: Scene) -> str:
    """Render a scene with the SVG renderer."""
    return SvgSceneRenderer().render(scene)


def scene_json(scene: Scene) -> str:
    """JSON dump of a scene for debugging."""
    return json.dumps(scene.asdict(), cls=RationalJsonEncoder, indent=2, sort_keys=True)
