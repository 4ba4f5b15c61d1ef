from .contour import DEFAULT_RESOLUTION, conic_trace
from .geometry import fit_viewport, polyline_image
from .scene_renderer import SceneRenderer
from .svg_scene_renderer import SvgSceneRenderer, build_scene, render_svg, scene_json
