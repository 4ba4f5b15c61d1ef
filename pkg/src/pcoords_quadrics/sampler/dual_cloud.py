from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from pcoords_quadrics.duality import contact_measure, contact_surface, psq_symbolic
from pcoords_quadrics.errors import DegenerateContactError, UsageError
from pcoords_quadrics.models import (
    AxisSpacing,
    CloudReport,
    DualSample,
    ProjectivePoint,
    PSQTriple,
    QuadricSurface,
    SampleConfig,
)
from pcoords_quadrics.polycore import NumericPolynomial
from pcoords_quadrics.sampler.surface_sampler import gradient_matrix, project_onto_surface

IDEAL_TOLERANCE = 1e-12
BRACKET_EXPANSIONS = 48
REFINE_BISECTIONS = 100


@dataclass(frozen=True)
class ContactField:
    """Float evaluators for P, S, Q and the contact condition of one surface."""

    surface: QuadricSurface
    spacing: AxisSpacing
    psq: PSQTriple
    P: NumericPolynomial
    S: NumericPolynomial
    Q: NumericPolynomial
    sigma: Optional[NumericPolynomial]
    sigma_gradient: Tuple[NumericPolynomial, ...]
    developable: bool = False

    @staticmethod
    def of(surface: QuadricSurface, spacing: AxisSpacing) -> "ContactField":
        psq = psq_symbolic(surface, spacing)
        sigma = None
        sigma_gradient: Tuple[NumericPolynomial, ...] = ()
        developable = False
        if surface.nvars == 3:
            try:
                exact = contact_surface(surface, spacing)
            except DegenerateContactError:
                # sigma' vanishes on the whole surface: every tangent plane is a contact
                logging.info(f"{surface} is developable; every sample is a boundary hit")
                developable = True
            else:
                sigma = exact.to_numeric()
                sigma_gradient = tuple(partial.to_numeric() for partial in exact.gradient())
        return ContactField(
            surface=surface,
            spacing=spacing,
            psq=psq,
            P=psq.P.to_numeric(),
            S=psq.S.to_numeric(),
            Q=psq.Q.to_numeric(),
            sigma=sigma,
            sigma_gradient=sigma_gradient,
            developable=developable,
        )

    def contact(self, points: np.ndarray) -> np.ndarray:
        if self.developable:
            return np.zeros(len(points))
        if self.sigma is not None:
            return self.sigma(points)
        return np.array(
            [contact_measure(self.surface, point, self.spacing, self.psq) for point in points]
        )


def _evaluate_chunk(
    field: ContactField, points: np.ndarray, config: SampleConfig
) -> Tuple[List[DualSample], int]:
    if len(points) == 0:
        return [], 0
    gradients = gradient_matrix(field.surface, points)
    norms = np.linalg.norm(gradients, axis=1)
    p, s, q = field.P(points), field.S(points), field.Q(points)
    jac = field.contact(points)

    samples: List[DualSample] = []
    singular = 0
    for i, point in enumerate(points):
        if norms[i] == 0 or (p[i] == 0 and s[i] == 0 and q[i] == 0):
            singular += 1
            continue
        c0 = float(point @ gradients[i])
        ideal = abs(q[i]) <= IDEAL_TOLERANCE * (abs(p[i]) + abs(s[i]) + abs(q[i]))
        hit = bool(np.isfinite(jac[i]) and abs(jac[i]) <= config.tol_contact * max(1.0, norms[i]))
        samples.append(
            DualSample(
                point=tuple(float(v) for v in point),
                gradient=tuple(float(v) for v in gradients[i]),
                plane=(c0,) + tuple(float(v) for v in gradients[i]),
                dual=ProjectivePoint(float(p[i]), float(s[i]), float(q[i])),
                jac=float(jac[i]),
                is_boundary=hit,
                is_ideal=bool(ideal),
            )
        )
    return samples, singular


def _refine(
    field: ContactField, sample: DualSample, config: SampleConfig
) -> Optional[DualSample]:
    """
    Bisect sigma' along the surface, starting from a sample close to the
    contact curve, in the tangential direction of grad sigma'.
    """
    assert field.sigma is not None
    surface = field.surface
    x = np.array(sample.point)
    normal = np.array(sample.gradient) / np.linalg.norm(sample.gradient)
    grad_sigma = np.array([partial.at(x) for partial in field.sigma_gradient])
    direction = grad_sigma - (grad_sigma @ normal) * normal
    speed = float(np.linalg.norm(direction))
    start = sample.jac
    if speed == 0 or start == 0:
        return None
    direction /= speed

    def moved(t: float) -> np.ndarray:
        return project_onto_surface(surface, (x + t * direction)[None, :])[0]

    def value(t: float) -> float:
        return field.sigma.at(moved(t))  # type: ignore[union-attr]

    low, high = 0.0, None
    t = -np.sign(start) * abs(start) / speed
    limit = 1e3 * (1.0 + float(np.linalg.norm(x)))
    for _ in range(BRACKET_EXPANSIONS):
        if abs(t) > limit:
            break
        if np.sign(value(t)) != np.sign(start):
            high = t
            break
        low, t = t, 2 * t
    if high is None:
        return None

    for _ in range(REFINE_BISECTIONS):
        middle = 0.5 * (low + high)
        if middle in (low, high):
            break
        current = value(middle)
        if current == 0:
            low = high = middle
            break
        if np.sign(current) == np.sign(start):
            low = middle
        else:
            high = middle

    polished, _ = _evaluate_chunk(field, moved(0.5 * (low + high))[None, :], config)
    if not polished:
        return None
    candidate = polished[0]
    if not candidate.is_boundary:
        return None
    if abs(surface.numeric.at(candidate.point)) > config.tol_surface:
        return None
    return replace(candidate, refined=True)


def dual_cloud(
    surface: QuadricSurface,
    points: Sequence[Sequence[float]],
    spacing: Optional[AxisSpacing] = None,
    config: Optional[SampleConfig] = None,
) -> CloudReport:
    """
    Dual samples for on-surface points, with the contact condition evaluated
    at each point.

    For three variables the contact condition is sigma'; the samples closest
    to the contact curve are refined onto it and appended as extra samples.
    Other dimensions use the numeric rank-drop measure and are not refined.
    On planes, cones and cylinders sigma' vanishes identically, so every
    sample is a boundary hit and nothing is refined.
    Singular points are counted and skipped, ideal duals counted and kept.

    Args:
        surface: The sampled surface
        points: Points with |F| <= tol_surface
        spacing: Axis positions, default 0..n-1
        config: Tolerances, refinement count and worker count

    Returns:
        The cloud report, samples in input order followed by refined samples
    """
    config = config or SampleConfig()
    spacing = AxisSpacing.resolve(spacing, surface.nvars)
    array = np.asarray(points, dtype=np.float64)
    if array.size == 0:
        array = array.reshape(0, surface.nvars)
    elif array.ndim != 2 or array.shape[1] != surface.nvars:
        raise UsageError(f"Points of shape {array.shape} do not match {surface.nvars} variables")

    off = np.abs(surface.numeric(array)) > config.tol_surface if len(array) else np.zeros(0, bool)
    if np.any(off):
        logging.warning(f"Skipping {np.count_nonzero(off)} points not on {surface}")
        array = array[~off]

    field = ContactField.of(surface, spacing)
    chunks = np.array_split(array, config.workers) if len(array) else [array]
    if config.workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as executor:
            results = list(executor.map(lambda chunk: _evaluate_chunk(field, chunk, config), chunks))
    else:
        results = [_evaluate_chunk(field, chunk, config) for chunk in chunks]

    samples: List[DualSample] = []
    singular = 0
    for chunk_samples, chunk_singular in results:
        samples.extend(chunk_samples)
        singular += chunk_singular
    if singular:
        logging.warning(f"Skipped {singular} singular points of {surface}")

    if field.sigma is not None and config.refine:
        scored = [
            (abs(sample.jac) / max(1.0, float(np.linalg.norm(sample.gradient))), index)
            for index, sample in enumerate(samples)
            if not sample.is_boundary and not sample.is_ideal
        ]
        scored.sort()
        refined = 0
        for _, index in scored[: config.refine]:
            result = _refine(field, samples[index], config)
            if result is not None:
                samples.append(result)
                refined += 1
        logging.info(f"Refined {refined} of {min(len(scored), config.refine)} samples onto the contact curve")

    report = CloudReport(
        surface=surface,
        spacing=spacing,
        samples=tuple(samples),
        n_ideal=sum(1 for sample in samples if sample.is_ideal),
        n_singular=singular,
    )
    logging.info(
        f"Dual cloud of {surface}: {len(samples)} samples, {len(report.boundary_hits)} "
        f"boundary hits, {report.n_ideal} ideal, {singular} singular"
    )
    return report
