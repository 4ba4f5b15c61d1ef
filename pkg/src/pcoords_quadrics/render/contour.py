from __future__ import annotations

import logging
from typing import Dict, List, Tuple

import numpy as np

from pcoords_quadrics.models import BoundaryCurve, Viewport

DEFAULT_RESOLUTION = 512

EdgeKey = Tuple[str, int, int]
Point = Tuple[float, float]


def _edge_point(key: EdgeKey, xs: np.ndarray, ys: np.ndarray, values: np.ndarray) -> Point:
    kind, i, j = key
    if kind == "h":
        v0, v1 = values[i, j], values[i + 1, j]
        t = 0.5 if v0 == v1 else min(1.0, max(0.0, v0 / (v0 - v1)))
        return (float(xs[i] + t * (xs[i + 1] - xs[i])), float(ys[j]))
    v0, v1 = values[i, j], values[i, j + 1]
    t = 0.5 if v0 == v1 else min(1.0, max(0.0, v0 / (v0 - v1)))
    return (float(xs[i]), float(ys[j] + t * (ys[j + 1] - ys[j])))


def _cell_segments(
    i: int, j: int, inside: np.ndarray, centre_inside: bool
) -> List[Tuple[EdgeKey, EdgeKey]]:
    """Segments of one marching-squares cell; corners counter-clockwise from (i, j)."""
    corners = (inside[i, j], inside[i + 1, j], inside[i + 1, j + 1], inside[i, j + 1])
    bottom, right, top, left = ("h", i, j), ("v", i + 1, j), ("h", i, j + 1), ("v", i, j)
    sides = (bottom, right, top, left)
    crossing = [sides[k] for k in range(4) if corners[k] != corners[(k + 1) % 4]]
    if len(crossing) == 2:
        return [(crossing[0], crossing[1])]
    if len(crossing) != 4:
        return []
    # saddle: the centre decides which diagonal pair of corners is connected
    if centre_inside == corners[0]:
        return [(bottom, right), (top, left)]
    return [(left, bottom), (right, top)]


def _chains(adjacency: Dict[EdgeKey, List[EdgeKey]]) -> List[List[EdgeKey]]:
    visited = set()
    chains: List[List[EdgeKey]] = []

    def walk(start: EdgeKey) -> List[EdgeKey]:
        chain = [start]
        visited.add(start)
        current = start
        while True:
            following = [n for n in adjacency[current] if n not in visited]
            if not following:
                if len(chain) > 2 and start in adjacency[current]:
                    chain.append(start)
                return chain
            current = following[0]
            visited.add(current)
            chain.append(current)

    for key in sorted(adjacency):
        if key not in visited and len(adjacency[key]) == 1:
            chains.append(walk(key))
    for key in sorted(adjacency):
        if key not in visited:
            chains.append(walk(key))
    return chains


def conic_trace(
    curve: BoundaryCurve, viewport: Viewport, steps: int = DEFAULT_RESOLUTION
) -> List[List[Point]]:
    """
    Marching-squares contour of the boundary conic over the viewport.

    Args:
        curve: Boundary record with a conic
        viewport: Data rectangle to trace over
        steps: Grid cells per side

    Returns:
        Polyline strips in data coordinates, ordered by their first grid edge;
        an empty list when the conic has no real points in the viewport
    """
    if curve.gamma_bar is None:
        return []
    xs = np.linspace(viewport.x_min, viewport.x_max, steps + 1)
    ys = np.linspace(viewport.y_min, viewport.y_max, steps + 1)
    grid_x, grid_y = np.meshgrid(xs, ys, indexing="ij")
    nodes = np.column_stack([grid_x.ravel(), grid_y.ravel()])
    values = curve.numeric(nodes).reshape(steps + 1, steps + 1)
    inside = values >= 0

    corner_sum = (
        inside[:-1, :-1].astype(int)
        + inside[1:, :-1]
        + inside[1:, 1:]
        + inside[:-1, 1:]
    )
    cells_i, cells_j = np.nonzero((corner_sum > 0) & (corner_sum < 4))

    adjacency: Dict[EdgeKey, List[EdgeKey]] = {}
    for i, j in zip(cells_i.tolist(), cells_j.tolist()):
        centre = curve.numeric.at(((xs[i] + xs[i + 1]) / 2, (ys[j] + ys[j + 1]) / 2))
        for a, b in _cell_segments(i, j, inside, centre >= 0):
            adjacency.setdefault(a, []).append(b)
            adjacency.setdefault(b, []).append(a)

    strips = [
        [_edge_point(key, xs, ys, values) for key in chain] for chain in _chains(adjacency)
    ]
    logging.debug(f"Traced {len(strips)} strips of {curve.text} over {len(cells_i)} cells")
    return strips
