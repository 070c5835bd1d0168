r"""
Classification of trajectories and of the phase plane.

A bounded attractor of `F` is either the fixed point `O` or a weird
quasiperiodic attractor (WQA), and `F` has no hyperbolic cycles. A
trajectory is therefore classified as converging to `O`, diverging, or
bounded and aperiodic; in the last case an occupancy fingerprint of its tail
identifies the attractor it settles on, so that coexisting attractors can be
told apart.

AUTHORS:

- wqa-lib developers (2026-10-18): initial version

"""

# ****************************************************************************
#       Copyright (C) 2026 wqa-lib developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 2 of the License, or
# (at your option) any later version.
#                  https://www.gnu.org/licenses/
# ****************************************************************************

import csv
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

import numpy as np
from joblib import Parallel, delayed

from . import orbitkernels as kernels
from .errors import ConfigError, PreconditionError
from .pwlmap import (
    DEFAULT_ESCAPE_RADIUS, Partition, Point2, branch_matrix, inverse_images, partition_of, step,
)
from .symbolicsequence import all_words, composite_matrix, eigen2

logger = logging.getLogger(__name__)

FINGERPRINT_RESOLUTION = 256
FINGERPRINT_INFLATION = 0.1
SIMILARITY_THRESHOLD = 0.2
CONTAINMENT_THRESHOLD = 0.9
FAST_PATH_STEPS = 256
FAST_PATH_FRACTION = 0.9
BOUNDARY_TOLERANCE = 1e-9

@dataclass(frozen=True)
class ClassifyOptions:
    r"""
    Iteration budget and thresholds of :func:`classify_orbit`.

    ``fingerprint_samples`` iterates following the classification run are
    rasterized into the fingerprint of a bounded orbit.
    """
    max_iter: int = 1_000_000
    transient: int = 10_000
    escape_radius: float = DEFAULT_ESCAPE_RADIUS
    origin_tolerance: float = 1e-9
    fingerprint_samples: int = 100_000

    def __post_init__(self):
        if self.max_iter < 1 or self.transient < 0 or not self.transient < self.max_iter:
            raise ConfigError(f"need 0 <= transient < max_iter, got transient={self.transient}, max_iter={self.max_iter}.")
        if not self.escape_radius > 0 or not self.origin_tolerance > 0:
            raise ConfigError(
                f"escape_radius and origin_tolerance must be positive, got {self.escape_radius}, {self.origin_tolerance}.")
        if self.fingerprint_samples < 1:
            raise ConfigError(f"fingerprint_samples must be positive, got {self.fingerprint_samples}.")

    def replace(self, **changes):
        return replace(self, **changes)

    def to_dict(self):
        return {
            "max_iter": self.max_iter,
            "transient": self.transient,
            "escape_radius": self.escape_radius,
            "origin_tolerance": self.origin_tolerance,
            "fingerprint_samples": self.fingerprint_samples,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(**{k: data[k] for k in cls().to_dict() if k in data})

class OrbitKind(Enum):
    BOUNDED_APERIODIC = "BoundedAperiodic"
    CONVERGED_TO_O = "ConvergedToO"
    DIVERGED = "Diverged"

    def code(self):
        '''The status code used by the compiled kernels.'''
        return _KIND_CODES[self]

    @classmethod
    def from_code(cls, code):
        return _CODE_KINDS[int(code)]

_KIND_CODES = {
    OrbitKind.BOUNDED_APERIODIC: kernels.STATUS_BOUNDED,
    OrbitKind.CONVERGED_TO_O: kernels.STATUS_CONVERGED,
    OrbitKind.DIVERGED: kernels.STATUS_DIVERGED,
}
_CODE_KINDS = {v: k for k, v in _KIND_CODES.items()}

def _kernel_params(params):
    return (params.delta_L, params.delta_R, params.tau_L, params.tau_R)

class AttractorFingerprint:
    r"""
    Occupancy of a bounded orbit tail on a ``resolution x resolution`` grid
    over the tail's bounding box inflated by 10%.

    Two fingerprints are compared on the union of their windows, to which
    both are reprojected through their occupied cell centers.
    """
    def __init__(self, window, occupancy, sample_count):
        self.window = tuple(float(v) for v in window)
        self.occupancy = np.asarray(occupancy, dtype=bool)
        self.sample_count = int(sample_count)
        if not self.occupancy.any():
            raise ValueError("a fingerprint needs at least one occupied cell.")

    @classmethod
    def from_tail(cls, params, point, n_samples, resolution=FINGERPRINT_RESOLUTION,
                  escape_radius=DEFAULT_ESCAPE_RADIUS):
        r"""
        Builds the fingerprint of the ``n_samples`` iterates following
        ``point``. Returns ``None`` if the tail escapes.

        The tail is iterated twice: once for its bounding box, once to
        rasterize it.
        """
        x, y = point.as_tuple() if isinstance(point, Point2) else point
        pars = _kernel_params(params)
        xmin, xmax, ymin, ymax, escaped = kernels.tail_bbox(*pars, x, y, n_samples, escape_radius)
        if escaped:
            return None
        window = _inflate((xmin, xmax, ymin, ymax))
        occupancy = np.zeros((resolution, resolution), dtype=np.uint8)
        kernels.rasterize_tail(*pars, x, y, n_samples, *window, occupancy)
        return cls(window, occupancy, n_samples)

    @property
    def resolution(self):
        return self.occupancy.shape[0]

    def cell_count(self):
        return int(self.occupancy.sum())

    def cell_centers(self):
        '''Returns the centers of the occupied cells, shape ``(k, 2)``.'''
        iy, ix = np.nonzero(self.occupancy)
        x0, x1, y0, y1 = self.window
        ny, nx = self.occupancy.shape
        return np.column_stack((x0 + (ix + 0.5)*(x1 - x0)/nx, y0 + (iy + 0.5)*(y1 - y0)/ny))

    def reprojected(self, window, resolution=None):
        r"""
        Returns the occupancy carried to ``window`` at ``resolution``.
        """
        resolution = resolution or self.resolution
        return _rasterize_points(self.cell_centers(), window, resolution)

    def union_window(self, other):
        a, b = self.window, other.window
        return (min(a[0], b[0]), max(a[1], b[1]), min(a[2], b[2]), max(a[3], b[3]))

    def similarity(self, other):
        r"""
        Jaccard index of the two occupancies on the union window.
        """
        window = self.union_window(other)
        a, b = self.reprojected(window), other.reprojected(window)
        union = np.logical_or(a, b).sum()
        return float(np.logical_and(a, b).sum()/union) if union else 0.0

    def containment(self, other):
        r"""
        Fraction of the cells of ``other`` that are also cells of ``self``,
        on the union window.
        """
        window = self.union_window(other)
        a, b = self.reprojected(window), other.reprojected(window)
        count = b.sum()
        return float(np.logical_and(a, b).sum()/count) if count else 0.0

    def contains_orbit(self, params, point, steps=FAST_PATH_STEPS, escape_radius=DEFAULT_ESCAPE_RADIUS):
        r"""
        Returns the fraction of the ``steps`` iterates following ``point``
        that land in an occupied cell or next to one.
        """
        x, y = point.as_tuple() if isinstance(point, Point2) else point
        hits = kernels.count_hits(*_kernel_params(params), x, y, steps, *self.window,
                                  self.occupancy.astype(np.uint8), escape_radius)
        return hits/steps

    def invariance(self, params):
        r"""
        Overlap of the occupancy with its one-step image.

        Each occupied cell center is mapped by `F`; an image cell counts as
        matched when it is an occupied cell or next to one, and an occupied
        cell counts as covered when an image cell is at most one cell away.
        Returns ``(matched + covered) / (images + cells)``.
        """
        centers = self.cell_centers()
        images = np.array([step(params, Point2(float(cx), float(cy))).as_tuple() for cx, cy in centers])
        image_occ = _rasterize_points(images, self.window, self.resolution)
        own_near = _dilate(self.occupancy)
        image_near = _dilate(image_occ)
        matched = np.logical_and(image_occ, own_near).sum()
        covered = np.logical_and(self.occupancy, image_near).sum()
        total = image_occ.sum() + self.occupancy.sum()
        return float((matched + covered)/total) if total else 0.0

    def __eq__(self, other):
        return (isinstance(other, AttractorFingerprint) and self.window == other.window
                and self.sample_count == other.sample_count
                and np.array_equal(self.occupancy, other.occupancy))

    def __repr__(self):
        return f"AttractorFingerprint(window={self.window}, cells={self.cell_count()}, samples={self.sample_count})"

    def to_dict(self):
        return {
            "window": list(self.window),
            "resolution": self.resolution,
            "cells": np.flatnonzero(self.occupancy).tolist(),
            "sample_count": self.sample_count,
        }

    @classmethod
    def from_dict(cls, data):
        res = data["resolution"]
        occupancy = np.zeros(res*res, dtype=bool)
        occupancy[np.asarray(data["cells"], dtype=np.int64)] = True
        return cls(data["window"], occupancy.reshape(res, res), data["sample_count"])

def _inflate(bbox, fraction=FINGERPRINT_INFLATION):
    x0, x1, y0, y1 = bbox
    dx = max((x1 - x0)*fraction, 1e-9*max(1.0, abs(x0), abs(x1)))
    dy = max((y1 - y0)*fraction, 1e-9*max(1.0, abs(y0), abs(y1)))
    return (x0 - dx, x1 + dx, y0 - dy, y1 + dy)

def _rasterize_points(points, window, resolution):
    x0, x1, y0, y1 = window
    occupancy = np.zeros((resolution, resolution), dtype=bool)
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(points) == 0:
        return occupancy
    ix = np.floor((points[:, 0] - x0)/(x1 - x0)*resolution).astype(np.int64)
    iy = np.floor((points[:, 1] - y0)/(y1 - y0)*resolution).astype(np.int64)
    ix = np.where(ix == resolution, resolution - 1, ix)
    iy = np.where(iy == resolution, resolution - 1, iy)
    keep = (ix >= 0) & (ix < resolution) & (iy >= 0) & (iy < resolution)
    occupancy[iy[keep], ix[keep]] = True
    return occupancy

def _dilate(occupancy):
    padded = np.pad(occupancy, 1)
    out = np.zeros_like(occupancy)
    ny, nx = occupancy.shape
    for dy in range(3):
        for dx in range(3):
            out |= padded[dy:dy + ny, dx:dx + nx]
    return out

class AttractorRegistry:
    r"""
    Sequential registry of the distinct bounded attractors met so far.

    A candidate fingerprint joins the registered attractor it is most similar
    to when the Jaccard index reaches ``similarity_threshold``, or when one of
    the two contains at least ``containment_threshold`` of the other;
    otherwise it is registered as a new attractor. Ids are assigned in
    registration order, so a fixed visiting order gives fixed ids.
    """
    def __init__(self, similarity_threshold=SIMILARITY_THRESHOLD, containment_threshold=CONTAINMENT_THRESHOLD):
        self.similarity_threshold = similarity_threshold
        self.containment_threshold = containment_threshold
        self.fingerprints = []

    def __len__(self):
        return len(self.fingerprints)

    def match(self, fingerprint):
        r"""
        Returns the id of the registered attractor ``fingerprint`` belongs
        to, or ``None``.
        """
        best_id, best_sim = None, -1.0
        for i, registered in enumerate(self.fingerprints):
            sim = registered.similarity(fingerprint)
            if sim > best_sim:
                best_id, best_sim = i, sim
        if best_id is not None and best_sim >= self.similarity_threshold:
            return best_id
        for i, registered in enumerate(self.fingerprints):
            if (registered.containment(fingerprint) >= self.containment_threshold
                    or fingerprint.containment(registered) >= self.containment_threshold):
                return i
        return None

    def match_or_add(self, fingerprint):
        found = self.match(fingerprint)
        if found is not None:
            return found
        self.fingerprints.append(fingerprint)
        return len(self.fingerprints) - 1

    def match_orbit(self, params, point, steps=FAST_PATH_STEPS, fraction=FAST_PATH_FRACTION,
                    escape_radius=DEFAULT_ESCAPE_RADIUS):
        r"""
        Fast membership test: returns the id of the registered attractor
        whose occupancy receives at least ``fraction`` of the ``steps``
        iterates following ``point``, or ``None``.
        """
        best_id, best = None, fraction
        for i, registered in enumerate(self.fingerprints):
            share = registered.contains_orbit(params, point, steps, escape_radius)
            if share >= best:
                best_id, best = i, share
        return best_id

def cluster_fingerprints(fingerprints, similarity_threshold=SIMILARITY_THRESHOLD,
                         containment_threshold=CONTAINMENT_THRESHOLD):
    r"""
    Returns cluster ids for ``fingerprints`` in order, using an
    :class:`AttractorRegistry`.
    """
    registry = AttractorRegistry(similarity_threshold, containment_threshold)
    return [registry.match_or_add(fp) for fp in fingerprints]

@dataclass
class OrbitClass:
    kind: OrbitKind
    fingerprint: Optional[AttractorFingerprint] = None
    lyapunov_estimate: Optional[float] = None
    final_point: Optional[Point2] = None
    iterations: int = 0

    def __post_init__(self):
        if (self.fingerprint is not None) != (self.kind is OrbitKind.BOUNDED_APERIODIC):
            raise ValueError(f"a fingerprint is present iff the orbit is bounded aperiodic, got {self.kind}.")

class StabilityKind(Enum):
    ATTRACTING = "Attracting"
    SADDLE = "Saddle"
    REPELLING = "Repelling"
    NONHYPERBOLIC_BOUNDARY = "NonhyperbolicBoundary"

class BoundaryKind(Enum):
    DEGENERATE_PLUS_ONE = "DegeneratePlusOne"
    DEGENERATE_FLIP = "DegenerateFlip"
    CENTER = "Center"

@dataclass(frozen=True)
class StabilityClass:
    kind: StabilityKind
    boundary_kind: Optional[BoundaryKind] = None

    def __post_init__(self):
        if (self.boundary_kind is not None) != (self.kind is StabilityKind.NONHYPERBOLIC_BOUNDARY):
            raise ValueError("boundary_kind is set iff the fixed point is on the stability boundary.")

def fixed_point_stability(params, tol=BOUNDARY_TOLERANCE):
    r"""
    Returns the stability of `O` from the eigenvalues of `J_R`.

    The boundary of the stability triangle is detected within ``tol``:
    ``tau_R = 1 + delta_R`` (degenerate +1), ``tau_R = -1 - delta_R``
    (degenerate flip) and ``delta_R = 1`` with ``|tau_R| < 2`` (center).

    EXAMPLES::

        >>> fixed_point_stability(MapParams(0.9, 0.7, -2.0, 1.5)).kind
        <StabilityKind.ATTRACTING: 'Attracting'>
        >>> fixed_point_stability(MapParams(0.9, 0.7, 1.3, -1.7)).boundary_kind
        <BoundaryKind.DEGENERATE_FLIP: 'DegenerateFlip'>
    """
    d, t = params.delta_R, params.tau_R
    if abs(t - (1.0 + d)) <= tol:
        return StabilityClass(StabilityKind.NONHYPERBOLIC_BOUNDARY, BoundaryKind.DEGENERATE_PLUS_ONE)
    if abs(t + 1.0 + d) <= tol:
        return StabilityClass(StabilityKind.NONHYPERBOLIC_BOUNDARY, BoundaryKind.DEGENERATE_FLIP)
    if abs(d - 1.0) <= tol and abs(t) < 2.0:
        return StabilityClass(StabilityKind.NONHYPERBOLIC_BOUNDARY, BoundaryKind.CENTER)
    eig = eigen2(branch_matrix(params, Partition.R))
    moduli = sorted((abs(eig.lambda1), abs(eig.lambda2)))
    if moduli[1] < 1.0:
        return StabilityClass(StabilityKind.ATTRACTING)
    if moduli[0] > 1.0:
        return StabilityClass(StabilityKind.REPELLING)
    return StabilityClass(StabilityKind.SADDLE)

class InvertibilityType(Enum):
    r"""
    The invertibility types of `F`, named after the zones met crossing the
    critical lines from bottom to top.
    """
    A = "a"
    B = "b"
    C = "c"
    D = "d"
    E = "e"
    F = "f"

    def zones(self):
        return {
            "a": "Z1-Z0-Z1",
            "b": "Z1-Z2-Z1",
            "c": "Z0-Z1-Z2",
            "d": "Z1-Zinf-Z1-Z0",
            "e": "Z0-Zinf-Z0-Z1",
            "f": "Z1-Z2-Z1",
        }[self.value]

def invertibility_type(params):
    r"""
    Returns the invertibility type of `F` from the determinants.

    Equal determinants give case (f), also when both vanish.
    """
    dL, dR = params.delta_L, params.delta_R
    if dL == dR:
        return InvertibilityType.F
    if dL == 0.0:
        return InvertibilityType.D
    if dR == 0.0:
        return InvertibilityType.E
    if dL*dR < 0:
        return InvertibilityType.C
    if 0 < dR < dL or dL < dR < 0:
        return InvertibilityType.A
    return InvertibilityType.B

def zone_of_point(params, p):
    r"""
    Returns the number of preimages of ``p``, i.e. the index `j` of its zone
    `Z_j`. Raises NongenericMapError if a determinant vanishes.
    """
    return len(inverse_images(params, p))

def _origin_attracting(params):
    return fixed_point_stability(params).kind is StabilityKind.ATTRACTING

def classify_orbit(params, p0, opts=None, lyapunov_steps=0):
    r"""
    Classifies the trajectory of ``p0``.

    INPUT:

    - ``params`` -- MapParams
    - ``p0`` -- Point2
    - ``opts`` -- ClassifyOptions (default: the defaults of ClassifyOptions)
    - ``lyapunov_steps`` -- integer (default: `0`); if positive, a Lyapunov
      estimate over that many steps is attached to bounded aperiodic orbits.

    OUTPUT: OrbitClass. ``Diverged`` if the trajectory leaves the escape disk
    within ``max_iter`` steps, ``ConvergedToO`` if a post-transient iterate is
    within ``origin_tolerance`` of `O`, otherwise ``BoundedAperiodic`` with
    the fingerprint of the following ``fingerprint_samples`` iterates.
    """
    opts = opts or ClassifyOptions()
    p0 = p0 if isinstance(p0, Point2) else Point2(*p0)
    pars = _kernel_params(params)
    status, x, y, iterations = kernels.run_orbit(
        *pars, p0.x, p0.y, opts.max_iter, opts.transient, opts.escape_radius,
        opts.origin_tolerance, _origin_attracting(params))
    kind = OrbitKind.from_code(status)
    final = Point2(float(x), float(y))
    if kind is not OrbitKind.BOUNDED_APERIODIC:
        return OrbitClass(kind, final_point=final, iterations=int(iterations))

    fingerprint = AttractorFingerprint.from_tail(params, final, opts.fingerprint_samples,
                                                 escape_radius=opts.escape_radius)
    if fingerprint is None:
        return OrbitClass(OrbitKind.DIVERGED, final_point=final, iterations=int(iterations))
    estimate = None
    if lyapunov_steps > 0:
        estimate = lyapunov_max(params, final, lyapunov_steps, 0, opts.escape_radius)
    return OrbitClass(kind, fingerprint, estimate, final, int(iterations))

def lyapunov_max(params, p0, n_steps, transient=0, escape_radius=DEFAULT_ESCAPE_RADIUS):
    r"""
    Returns the estimate of the largest Lyapunov exponent along the orbit of
    ``p0``: the mean of ``log |J(p_k) v_k|`` over ``n_steps`` steps with the
    tangent vector ``v`` renormalized to unit length after each step.

    Raises PreconditionError if the orbit escapes.

    EXAMPLES::

        >>> round(lyapunov_max(MapParams(0.9, 0.7, -2.0, 1.16), Point2(0, 0), 100000), 3)
        -0.178
    """
    if n_steps < 1:
        raise PreconditionError(f"n_steps must be positive, got {n_steps}.")
    p0 = p0 if isinstance(p0, Point2) else Point2(*p0)
    estimate, escaped = kernels.lyapunov_kernel(*_kernel_params(params), p0.x, p0.y,
                                                n_steps, transient, escape_radius)
    if escaped:
        raise PreconditionError(f"the orbit of {p0} escapes during the Lyapunov estimate at {params}.")
    return float(estimate)

def attractor_points(params, p0, opts=None, n_points=100_000):
    r"""
    Returns ``n_points`` iterates of ``p0`` after ``opts.transient`` steps as
    an array of shape ``(k, 2)``; ``k < n_points`` only if the orbit escapes.
    """
    opts = opts or ClassifyOptions()
    p0 = p0 if isinstance(p0, Point2) else Point2(*p0)
    pars = _kernel_params(params)
    head = np.empty((max(opts.transient, 1), 2))
    count = kernels.tail_points(*pars, p0.x, p0.y, opts.escape_radius, head)
    if count < len(head):
        return np.empty((0, 2))
    x, y = (head[-1, 0], head[-1, 1]) if opts.transient > 0 else p0.as_tuple()
    out = np.empty((n_points, 2))
    count = kernels.tail_points(*pars, x, y, opts.escape_radius, out)
    return out[:count]

def is_cyclic_under(params, fingerprint_or_points, n, overlap=0.05, resolution=FINGERPRINT_RESOLUTION):
    r"""
    Decides whether a bounded attractor consists of ``n`` cyclic blocks, each
    invariant under `F^n` and visited in turn.

    INPUT:

    - ``params`` -- MapParams
    - ``fingerprint_or_points`` -- array of consecutive orbit points on the
      attractor, shape ``(k, 2)`` with ``k >= n``.
    - ``n`` -- integer; the candidate number of blocks.
    - ``overlap`` -- float (default: `0.05`); largest Jaccard index allowed
      between the occupancies of two residue classes.

    OUTPUT: boolean; ``True`` iff the iterates with indices in different
    residue classes modulo ``n`` occupy nearly disjoint sets of cells.
    """
    points = np.asarray(fingerprint_or_points, dtype=float)
    if n < 2 or len(points) < n:
        raise ValueError(f"need n >= 2 and at least n points, got n={n} and {len(points)} points.")
    window = _inflate((points[:, 0].min(), points[:, 0].max(), points[:, 1].min(), points[:, 1].max()))
    classes = [_rasterize_points(points[r::n], window, resolution) for r in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            union = np.logical_or(classes[i], classes[j]).sum()
            if union and np.logical_and(classes[i], classes[j]).sum()/union > overlap:
                return False
    return True

def newton_periodic_search(params, max_period=6, seeds=None, tol=1e-9):
    r"""
    Searches periodic points of `F` with period at most ``max_period``.

    For every word `sigma` and every seed, Newton's method is applied to
    ``F_sigma(p) - p``, where `F_sigma` is the linear composite map; the
    limit is kept if its orbit follows `sigma` and returns to it. Words with
    ``J_sigma - I`` singular carry nonhyperbolic cycles and are skipped.

    OUTPUT: list of distinct Point2; only `O` when no `P_sigma(1)` vanishes.
    """
    if seeds is None:
        grid = np.linspace(-6.0, 6.0, 5)
        seeds = [Point2(float(x), float(y)) for x in grid for y in grid]
    found = []
    for sigma in all_words(1, max_period):
        A = composite_matrix(params, sigma).minus_identity()
        if abs(A.det()) <= 1e-12*max(1.0, abs(A.m11*A.m22), abs(A.m12*A.m21)):
            continue
        for seed in seeds:
            residual = np.array(A.apply(seed.x, seed.y))
            delta = np.linalg.solve(A.as_array(), residual)
            p = Point2(seed.x - float(delta[0]), seed.y - float(delta[1]))
            if not _follows(params, p, sigma, tol):
                continue
            if not any(math.hypot(p.x - q.x, p.y - q.y) <= tol for q in found):
                found.append(p)
    return found

def _follows(params, p, sigma, tol):
    q = p
    for label in sigma:
        if partition_of(q) is not label:
            return False
        q = step(params, q)
    return math.hypot(q.x - p.x, q.y - p.y) <= tol*max(1.0, p.norm())

class PhaseGrid:
    r"""
    Classification of the cell centers of a window of the phase plane.

    ``status[iy, ix]`` holds the :class:`OrbitKind` code of the cell with
    center ``(xs[ix], ys[iy])`` and ``cluster[iy, ix]`` the id of the
    bounded attractor reached from it, ``-1`` for the other cells.
    """
    def __init__(self, params, window, resolution, status, cluster, fingerprints):
        self.params = params
        self.window = tuple(float(v) for v in window)
        self.resolution = tuple(int(v) for v in resolution)
        self.status = np.asarray(status, dtype=np.int8)
        self.cluster = np.asarray(cluster, dtype=np.int16)
        self.fingerprints = list(fingerprints)

    @property
    def xs(self):
        x0, x1, _, _ = self.window
        nx = self.resolution[0]
        return x0 + (np.arange(nx) + 0.5)*(x1 - x0)/nx

    @property
    def ys(self):
        _, _, y0, y1 = self.window
        ny = self.resolution[1]
        return y0 + (np.arange(ny) + 0.5)*(y1 - y0)/ny

    def attractor_count(self):
        '''Number of distinct bounded attractors found.'''
        return len(self.fingerprints)

    def counts(self):
        return {kind: int((self.status == kind.code()).sum()) for kind in OrbitKind}

    def kind_at(self, ix, iy):
        return OrbitKind.from_code(self.status[iy, ix])

    def to_csv(self, path):
        r"""
        Writes one row per cell: ``x, y, class, cluster``.
        """
        xs, ys = self.xs, self.ys
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["x", "y", "class", "cluster"])
            for iy in range(self.resolution[1]):
                for ix in range(self.resolution[0]):
                    writer.writerow([repr(float(xs[ix])), repr(float(ys[iy])),
                                     self.kind_at(ix, iy).value, int(self.cluster[iy, ix])])

def _classify_row(pars, xs, y, opts, origin_attracting):
    status = np.empty(len(xs), dtype=np.int8)
    finals = np.empty((len(xs), 2))
    for ix, x in enumerate(xs):
        code, fx, fy, _ = kernels.run_orbit(*pars, float(x), float(y), opts.max_iter, opts.transient,
                                            opts.escape_radius, opts.origin_tolerance, origin_attracting)
        status[ix] = code
        finals[ix] = (fx, fy)
    return status, finals

def basin_grid(params, window, resolution, opts=None, n_jobs=1, verbose=False,
               similarity_threshold=SIMILARITY_THRESHOLD, containment_threshold=CONTAINMENT_THRESHOLD):
    r"""
    Classifies every cell center of ``window`` and groups bounded aperiodic
    cells by the attractor they reach.

    INPUT:

    - ``params`` -- MapParams
    - ``window`` -- ``(x0, x1, y0, y1)``
    - ``resolution`` -- ``(nx, ny)``; positive integers.
    - ``opts`` -- ClassifyOptions
    - ``n_jobs`` -- integer (default: `1`); joblib workers over rows.
    - ``verbose`` -- boolean (default: ``False``)

    OUTPUT: PhaseGrid

    The rows are classified in parallel. Bounded cells are then assigned in
    row-major order: a cell whose continuation stays on a registered
    attractor joins it directly, otherwise its full fingerprint is matched
    against the registry or registered as a new attractor.
    """
    opts = opts or ClassifyOptions()
    nx, ny = (int(v) for v in resolution)
    if nx < 1 or ny < 1:
        raise ConfigError(f"resolution must be positive, got {resolution}.")
    x0, x1, y0, y1 = window
    if not (x1 > x0 and y1 > y0):
        raise ConfigError(f"window must satisfy x0 < x1 and y0 < y1, got {window}.")
    log = logger.info if verbose else logger.debug

    xs = x0 + (np.arange(nx) + 0.5)*(x1 - x0)/nx
    ys = y0 + (np.arange(ny) + 0.5)*(y1 - y0)/ny
    pars = _kernel_params(params)
    attracting = _origin_attracting(params)
    log("basin grid %dx%d over %s at %s", nx, ny, tuple(window), params)
    rows = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_classify_row)(pars, xs, float(y), opts, attracting) for y in ys)
    status = np.stack([r[0] for r in rows])
    finals = np.stack([r[1] for r in rows])

    registry = AttractorRegistry(similarity_threshold, containment_threshold)
    cluster = np.full((ny, nx), -1, dtype=np.int16)
    bounded = kernels.STATUS_BOUNDED
    for iy in range(ny):
        for ix in range(nx):
            if status[iy, ix] != bounded:
                continue
            point = Point2(float(finals[iy, ix, 0]), float(finals[iy, ix, 1]))
            found = registry.match_orbit(params, point, escape_radius=opts.escape_radius)
            if found is None:
                fp = AttractorFingerprint.from_tail(params, point, opts.fingerprint_samples,
                                                    escape_radius=opts.escape_radius)
                if fp is None:
                    status[iy, ix] = kernels.STATUS_DIVERGED
                    continue
                found = registry.match_or_add(fp)
            cluster[iy, ix] = found
    log("basin grid done: %d bounded attractor(s)", len(registry))
    return PhaseGrid(params, window, (nx, ny), status, cluster, registry.fingerprints)
