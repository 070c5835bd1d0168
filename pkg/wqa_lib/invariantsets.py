r"""
Segment sets filled with nonhyperbolic cycles, cycles at infinity and the
boundary curves of the divergence regions.

For a word `sigma` with `P_sigma(1) = 0` the line of fixed points of the
linear map `F_sigma` is parameterized as ``t -> t (1, K)`` (``t (0, 1)`` when
it is vertical). Requiring the `j`-th image of a point of that line to lie in
`D_{sigma_j}` gives one linear inequality in `t` per letter; their
intersection is the maximal admissible interval, and its images are the
cyclic segments `S_j`. The same construction along an unstable eigenvector
decides whether a cycle at infinity is admissible.

The boundary families are polynomial residuals in the four parameters,
built from the recurrences `a_k` and `b_k`. The `RL` families are the `LR`
families evaluated at the mirrored parameters.

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
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed

from .errors import PreconditionError
from .pwlmap import BORDER, ParameterId, Partition, Point2, step
from .symbolicsequence import (
    SymbolicSequence, composite_matrix, eigen2, eigen_slope_at_one, eigenvector_slope,
    prefix_matrices, recurrence_a,
)

logger = logging.getLogger(__name__)

ENDPOINT_SLACK = 1e-9
BISECTION_STEPS = 60
BISECTION_TOLERANCE = 1e-10
SIGN_SCAN_CELLS = 256

class FamilyKind(Enum):
    B_LRn1 = "B_LRn1"
    B_L2Rn2 = "B_L2Rn2"
    B_RLn1 = "B_RLn1"
    B_R2Ln2 = "B_R2Ln2"
    E_LRn1 = "E_LRn1"
    E_L2Rn2 = "E_L2Rn2"
    E_RLn1 = "E_RLn1"
    E_R2Ln2 = "E_R2Ln2"
    H_LRn1 = "H_LRn1"
    H_RLn1 = "H_RLn1"
    B_LR = "B_LR"

    def curve_type(self):
        '''One of ``"B"``, ``"E"``, ``"H"``.'''
        return self.value[0]

    def is_mirror(self):
        '''True for the families of the divergence regions `D^L_{1/n}`.'''
        return self.value[2] == "R"

_MIRROR = {
    FamilyKind.B_RLn1: FamilyKind.B_LRn1,
    FamilyKind.B_R2Ln2: FamilyKind.B_L2Rn2,
    FamilyKind.E_RLn1: FamilyKind.E_LRn1,
    FamilyKind.E_R2Ln2: FamilyKind.E_L2Rn2,
    FamilyKind.H_RLn1: FamilyKind.H_LRn1,
}

class BoundaryFamily:
    r"""
    A boundary curve family together with its period ``n``.

    EXAMPLES::

        >>> f = BoundaryFamily.parse("B_LRn1:5")
        >>> f.sigma(), f.label()
        (SymbolicSequence('LR^4'), 'B_{LR^4}')
        >>> BoundaryFamily(FamilyKind.B_LR).n
        2
    """
    def __init__(self, kind, n=None):
        self.kind = FamilyKind(kind)
        if self.kind is FamilyKind.B_LR:
            if n not in (None, 2):
                raise ValueError(f"B_LR has period 2, got n={n}.")
            n = 2
        elif n is None or int(n) < 3:
            raise ValueError(f"{self.kind.value} needs a period n >= 3, got n={n}.")
        self.n = int(n)

    @classmethod
    def parse(cls, text):
        r"""
        Reads ``"KIND:n"`` or ``"KIND"`` (the latter only for ``B_LR``).
        """
        name, _, n = str(text).strip().partition(":")
        try:
            kind = FamilyKind(name.strip())
        except ValueError:
            raise ValueError(f"unknown boundary family {name!r}.") from None
        return cls(kind, int(n) if n else None)

    def sigma(self):
        r"""
        Returns the word whose `P_sigma(1)` or eigen structure the curve
        describes: `LR^{n-1}`, `L^2R^{n-2}` or a mirror of them. For the
        `H` families this is the basic word.
        """
        kind = _MIRROR.get(self.kind, self.kind)
        first = Partition.R if self.kind.is_mirror() else Partition.L
        if kind in (FamilyKind.B_L2Rn2, FamilyKind.E_L2Rn2):
            return SymbolicSequence.complementary(self.n, first)
        return SymbolicSequence.basic(self.n, first)

    def partner(self):
        r"""
        For an `H` family, the complementary word whose cycle at infinity
        takes over on the other side of the curve.
        """
        first = Partition.R if self.kind.is_mirror() else Partition.L
        return SymbolicSequence.complementary(self.n, first)

    def label(self):
        return f"{self.kind.value[0]}_{{{self.sigma()}}}"

    def __eq__(self, other):
        return isinstance(other, BoundaryFamily) and (self.kind, self.n) == (other.kind, other.n)

    def __hash__(self):
        return hash((self.kind, self.n))

    def __repr__(self):
        return f"BoundaryFamily({self.kind.value!r}, {self.n})"

    def __str__(self):
        return self.kind.value if self.kind is FamilyKind.B_LR else f"{self.kind.value}:{self.n}"

def boundary_residual(params, family):
    r"""
    Returns the signed residual of ``family`` at ``params``; it vanishes on
    the curve.

    The `LR` families are::

        B_{LR^{n-1}}:   1 - tau_L a_{n-1} + (delta_L + delta_R) a_{n-2} + delta_L delta_R^{n-1}
        B_{L^2R^{n-2}}: 1 + (tau_L (delta_L + delta_R) - delta_L tau_R) a_{n-3}
                          - (tau_L^2 - 2 delta_L) a_{n-2} + delta_L^2 delta_R^{n-2}
        E_{LR^{n-1}}:   (tau_L a_{n-1} - (delta_L + delta_R) a_{n-2})^2 - 4 delta_L delta_R^{n-1}
        E_{L^2R^{n-2}}: ((delta_L tau_R - tau_L (delta_L + delta_R)) a_{n-3}
                          + (tau_L^2 - 2 delta_L) a_{n-2})^2 - 4 delta_L^2 delta_R^{n-2}
        H_{LR^{n-1}}:   delta_L a_{n-3} - tau_L a_{n-2}
        B_{LR}:         1 - tau_L tau_R + delta_L + delta_R + delta_L delta_R

    The `B` residuals equal `P_sigma(1)` and the `E` residuals the
    discriminant of `J_sigma`.
    """
    if family.kind.is_mirror():
        return boundary_residual(params.mirrored(), BoundaryFamily(_MIRROR[family.kind], family.n))

    n = family.n
    dL, dR, tL, tR = params.as_tuple()
    if family.kind is FamilyKind.B_LR:
        return 1.0 - tL*tR + dL + dR + dL*dR

    a = lambda k: recurrence_a(params, k)
    if family.kind is FamilyKind.B_LRn1:
        return 1.0 - tL*a(n - 1) + (dL + dR)*a(n - 2) + dL*dR**(n - 1)
    if family.kind is FamilyKind.B_L2Rn2:
        return 1.0 + (tL*(dL + dR) - dL*tR)*a(n - 3) - (tL*tL - 2.0*dL)*a(n - 2) + dL*dL*dR**(n - 2)
    if family.kind is FamilyKind.E_LRn1:
        trace = tL*a(n - 1) - (dL + dR)*a(n - 2)
        return trace*trace - 4.0*dL*dR**(n - 1)
    if family.kind is FamilyKind.E_L2Rn2:
        trace = (dL*tR - tL*(dL + dR))*a(n - 3) + (tL*tL - 2.0*dL)*a(n - 2)
        return trace*trace - 4.0*dL*dL*dR**(n - 2)
    if family.kind is FamilyKind.H_LRn1:
        return dL*a(n - 3) - tL*a(n - 2)
    raise ValueError(f"no residual for {family!r}.")

class AdmissibilityStatus(Enum):
    ADMISSIBLE_UNBOUNDED = "admissible-unbounded"
    ADMISSIBLE_BOUNDED = "admissible-bounded"
    VIRTUAL = "virtual"

    def is_admissible(self):
        return self is not AdmissibilityStatus.VIRTUAL

@dataclass(frozen=True)
class Segment:
    r"""
    One segment ``{t w : t in [t_lo, t_hi]}`` of a segment set, lying on the
    ray spanned by ``w`` (the image of the eigen direction after `j` steps).
    Infinite ends of the interval make the segment a halfline.
    """
    index: int
    label: Partition
    w: Tuple[float, float]
    t_lo: float
    t_hi: float

    def is_bounded(self):
        return math.isfinite(self.t_lo) and math.isfinite(self.t_hi)

    def point(self, t):
        return Point2(t*self.w[0], t*self.w[1])

    def endpoints(self):
        r"""
        Returns the two endpoints, ``None`` for an end at infinity.
        """
        lo = self.point(self.t_lo) if math.isfinite(self.t_lo) else None
        hi = self.point(self.t_hi) if math.isfinite(self.t_hi) else None
        return (lo, hi)

    def slope(self):
        if self.w[0] == 0.0:
            return math.inf
        return self.w[1]/self.w[0]

    def lies_in_partition(self, slack=ENDPOINT_SLACK):
        r"""
        True iff every point of the segment is in ``D_label``, with the border
        line counted in both partitions up to ``slack``.
        """
        for end in (self.t_lo, self.t_hi):
            if math.isfinite(end):
                x = end*self.w[0]
            elif self.w[0] == 0.0:
                x = 0.0
            else:
                x = math.copysign(math.inf, end*self.w[0])
            margin = slack*max(1.0, abs(x)) if math.isfinite(x) else slack
            if self.label is Partition.L and x > BORDER + margin:
                return False
            if self.label is Partition.R and x < BORDER - margin:
                return False
        return True

class SegmentSet:
    r"""
    The `n` cyclic segments `S_0, ..., S_{n-1}` of a maximal admissible set.

    All segments share the parameter interval ``[t_lo, t_hi]``; segment `j`
    is ``t -> t w_j`` with ``w_0`` the eigen direction and
    ``w_{j+1} = J_{sigma_j} w_j``.
    """
    def __init__(self, sigma, directions, t_lo, t_hi):
        self.sigma = SymbolicSequence(sigma)
        self.t_lo = float(t_lo)
        self.t_hi = float(t_hi)
        self.segments = [
            Segment(j, self.sigma[j], (float(w[0]), float(w[1])), self.t_lo, self.t_hi)
            for j, w in enumerate(directions)
        ]

    def __len__(self):
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def __getitem__(self, j):
        return self.segments[j]

    def is_bounded(self):
        return math.isfinite(self.t_lo) and math.isfinite(self.t_hi)

    def layout(self):
        '''Returns the partitions of the segments as a string, e.g. ``"LLRRR"``.'''
        return "".join(seg.label.value for seg in self.segments)

    def sample_parameters(self, count, extent=None):
        r"""
        Returns ``count`` interior parameter values, evenly spaced.

        An infinite end of the interval is cut at ``extent`` (default: four
        times the finite end).
        """
        lo, hi = self.t_lo, self.t_hi
        if not math.isfinite(lo) or not math.isfinite(hi):
            finite = hi if math.isfinite(hi) else lo
            if not math.isfinite(finite):
                finite = 1.0
            reach = extent if extent is not None else 4.0*max(abs(finite), 1.0)
            if not math.isfinite(lo):
                lo = finite - reach
            else:
                hi = finite + reach
        return list(np.linspace(lo, hi, count + 2)[1:-1])

    def sample_points(self, count, extent=None):
        '''Interior points of the first segment `S_0`.'''
        return [self.segments[0].point(t) for t in self.sample_parameters(count, extent)]

    def finite_endpoints(self):
        points = []
        for seg in self.segments:
            points.extend(p for p in seg.endpoints() if p is not None)
        return points

    def border_endpoints(self, tol=1e-9):
        r"""
        Returns the finite endpoints lying on the border line ``x = -1``.
        """
        return [p for p in self.finite_endpoints() if abs(p.x - BORDER) <= tol*max(1.0, abs(p.x))]

    def periodicity_error(self, params, count=100, extent=None):
        r"""
        Returns the largest relative distance ``|F^n(p) - p| / |p|`` over
        ``count`` interior points ``p`` of `S_0`, where ``n = len(self)``.
        """
        worst = 0.0
        for p in self.sample_points(count, extent):
            q = p
            for _ in range(len(self)):
                q = step(params, q)
            worst = max(worst, math.hypot(q.x - p.x, q.y - p.y)/max(p.norm(), 1e-300))
        return worst

    def to_dict(self):
        return {
            "sigma": self.sigma.word,
            "t_lo": self.t_lo,
            "t_hi": self.t_hi,
            "directions": [list(seg.w) for seg in self.segments],
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data["sigma"], data["directions"], data["t_lo"], data["t_hi"])

@dataclass
class AdmissibilityResult:
    status: AdmissibilityStatus
    interval: Optional[Tuple[float, float]]
    slope: float
    segments: Optional[SegmentSet] = None

def _direction_of(slope):
    return (0.0, 1.0) if math.isinf(slope) else (1.0, slope)

def ray_interval(params, sigma, direction):
    r"""
    Returns the maximal interval ``(t_lo, t_hi)`` of parameters ``t`` such that
    ``t * direction`` follows the itinerary ``sigma`` for ``len(sigma)``
    steps, together with the images ``w_j`` of ``direction``. The interval is
    ``None`` when empty.

    Membership of ``t w_j`` in `D_L` reads ``t c_j <= -1`` and in `D_R`
    reads ``t c_j >= -1`` with ``c_j`` the abscissa of ``w_j``; the
    partitions are taken closed.
    """
    sigma = SymbolicSequence(sigma)
    directions = [P.apply(*direction) for P in prefix_matrices(params, sigma)[:-1]]
    lo, hi = -math.inf, math.inf
    for label, w in zip(sigma, directions):
        c = w[0]
        if c == 0.0:
            if label is Partition.L:
                return None, directions
            continue
        bound = BORDER/c
        # t c <= -1 for L and t c >= -1 for R; dividing by c < 0 flips the inequality
        if (label is Partition.L) == (c > 0):
            hi = min(hi, bound)
        else:
            lo = max(lo, bound)
    if not lo < hi:
        return None, directions
    return (lo, hi), directions

def admissible_interval(params, sigma, tol=1e-8):
    r"""
    Decides whether the segments of nonhyperbolic `sigma`-cycles are
    admissible and returns the maximal interval on the eigenline.

    INPUT:

    - ``params`` -- MapParams; `P_sigma(1)` must vanish up to ``tol``.
    - ``sigma`` -- SymbolicSequence
    - ``tol`` -- float (default: ``1e-8``)

    OUTPUT: AdmissibilityResult; ``segments`` is set unless the status is
    ``VIRTUAL``.

    EXAMPLES::

        >>> p = Examples.get_params("lr4_halflines")
        >>> root, = boundary_roots(BoundaryFamily("B_LRn1", 5), p, "tau_R", (1.14, 1.16))
        >>> admissible_interval(p.with_value("tau_R", root), SymbolicSequence("LR^4")).status
        <AdmissibilityStatus.ADMISSIBLE_UNBOUNDED: 'admissible-unbounded'>
    """
    sigma = SymbolicSequence(sigma)
    slope = eigen_slope_at_one(params, sigma, tol)
    interval, directions = ray_interval(params, sigma, _direction_of(slope))
    if interval is None:
        return AdmissibilityResult(AdmissibilityStatus.VIRTUAL, None, slope)
    segments = SegmentSet(sigma, directions, *interval)
    status = (AdmissibilityStatus.ADMISSIBLE_BOUNDED if segments.is_bounded()
              else AdmissibilityStatus.ADMISSIBLE_UNBOUNDED)
    return AdmissibilityResult(status, interval, slope, segments)

def segment_set_at(params, sigma, tol=1e-8):
    r"""
    Returns the maximal admissible :class:`SegmentSet` of ``sigma``.

    Every interior point of `S_0` is a periodic point of `F` of period
    ``len(sigma)`` with itinerary ``sigma``. Raises PreconditionError if the
    set is virtual.
    """
    result = admissible_interval(params, sigma, tol)
    if result.segments is None:
        raise PreconditionError(f"the segment set of {SymbolicSequence(sigma)} is virtual at {params}.")
    return result.segments

def degenerate_set_at(params, tol=1e-12):
    r"""
    Returns the set of nonhyperbolic points of `O`'s degenerate bifurcations.

    At ``tau_R = 1 + delta_R`` every point of the halfline
    ``{x >= -1, y = -delta_R x}`` is fixed; at ``tau_R = -1 - delta_R`` every
    point of the segment ``{-1 <= x <= 1, y = delta_R x}`` other than `O` is
    2-periodic. The result is a SegmentSet with word ``R`` or ``RR``.
    """
    if abs(params.tau_R - (1.0 + params.delta_R)) <= tol:
        sigma, direction = SymbolicSequence("R"), (1.0, -params.delta_R)
    elif abs(params.tau_R + 1.0 + params.delta_R) <= tol:
        sigma, direction = SymbolicSequence("RR"), (1.0, params.delta_R)
    else:
        raise PreconditionError(f"the fixed point is not at a degenerate +1 or flip bifurcation at {params}.")
    interval, directions = ray_interval(params, sigma, direction)
    return SegmentSet(sigma, directions, *interval)

@dataclass
class CycleAtInfinity:
    r"""
    An admissible cycle at infinity: the halflines along an eigenvector of
    `J_sigma` with multiplier ``multiplier > 1`` and their images all lie in
    the partitions named by ``sigma``, so trajectories near them escape.
    """
    sigma: SymbolicSequence
    multiplier: float
    halflines: SegmentSet

def cycle_at_infinity(params, sigma):
    r"""
    Returns the :class:`CycleAtInfinity` of ``sigma`` at ``params``, or ``None``.

    Only real eigenvalues larger than 1 are considered; the admissible
    interval along the eigenvector must be unbounded.
    """
    sigma = SymbolicSequence(sigma)
    eig = eigen2(composite_matrix(params, sigma))
    if not eig.is_real():
        return None
    J = composite_matrix(params, sigma)
    for lam in (eig.lambda1.real, eig.lambda2.real):
        if lam <= 1.0:
            continue
        interval, directions = ray_interval(params, sigma, _direction_of(eigenvector_slope(J, lam)))
        if interval is None:
            continue
        if math.isinf(interval[0]) or math.isinf(interval[1]):
            return CycleAtInfinity(sigma, lam, SegmentSet(sigma, directions, *interval))
    return None

def divergence_membership(params, n):
    r"""
    Returns the words among `LR^{n-1}`, `L^2R^{n-2}`, `RL^{n-1}`, `R^2L^{n-2}`
    that carry an admissible cycle at infinity, mapped to that cycle.

    A nonempty result places ``params`` in a divergence region of rotation
    number `1/n`.
    """
    words = [SymbolicSequence.basic(n), SymbolicSequence.basic(n, Partition.R)]
    if n >= 3:
        words += [SymbolicSequence.complementary(n), SymbolicSequence.complementary(n, Partition.R)]
    found = {}
    for sigma in words:
        cycle = cycle_at_infinity(params, sigma)
        if cycle is not None:
            found[sigma] = cycle
    return found

def certify_h_point(params, family, solve_axis, offset=1e-6):
    r"""
    True iff an `H` curve point lies inside its divergence region: on both
    sides of the curve (``solve_axis`` shifted by ``+-offset``) the basic or
    the complementary word has an admissible cycle at infinity.
    """
    solve_axis = ParameterId.parse(solve_axis)
    value = params.get(solve_axis)
    step_size = offset*max(1.0, abs(value))
    words = (family.sigma(), family.partner())
    for shifted in (value - step_size, value + step_size):
        p = params.with_value(solve_axis, shifted)
        if not any(cycle_at_infinity(p, w) is not None for w in words):
            return False
    return True

@dataclass(frozen=True)
class BoundaryPoint:
    r"""
    A root of a boundary residual. ``status`` is the admissibility of the
    segment set at the root for `B` families and ``None`` otherwise.
    """
    sweep_value: float
    solve_value: float
    status: Optional[AdmissibilityStatus]

@dataclass
class BoundaryCurve:
    family: BoundaryFamily
    sweep_axis: ParameterId
    solve_axis: ParameterId
    points: List[BoundaryPoint] = field(default_factory=list)

    def __len__(self):
        return len(self.points)

    def arcs(self):
        r"""
        Splits the points into maximal runs of consecutive points with the
        same status. Returns a list of ``(status, points)``.
        """
        arcs = []
        for point in self.points:
            if arcs and arcs[-1][0] == point.status:
                arcs[-1][1].append(point)
            else:
                arcs.append((point.status, [point]))
        return arcs

    def divergence_points(self):
        '''Points certified as lying on a divergence boundary.'''
        return [p for p in self.points if p.status is AdmissibilityStatus.ADMISSIBLE_UNBOUNDED]

    def to_csv(self, path):
        r"""
        Writes columns ``sweep_value, solve_value, admissibility_status``.
        """
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["sweep_value", "solve_value", "admissibility_status"])
            for p in self.points:
                writer.writerow([repr(p.sweep_value), repr(p.solve_value),
                                 p.status.value if p.status is not None else "none"])

def bisect_root(f, lo, hi, f_lo=None, f_hi=None, steps=BISECTION_STEPS, tol=BISECTION_TOLERANCE):
    r"""
    Bracketed bisection of ``f`` on ``[lo, hi]``, stopping after ``steps``
    halvings or once ``|f| < tol``.
    """
    f_lo = f(lo) if f_lo is None else f_lo
    f_hi = f(hi) if f_hi is None else f_hi
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise ValueError(f"no sign change of the residual on [{lo}, {hi}].")
    mid = 0.5*(lo + hi)
    for _ in range(steps):
        mid = 0.5*(lo + hi)
        f_mid = f(mid)
        if abs(f_mid) < tol:
            break
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return mid

def boundary_roots(family, params, solve_axis, solve_range, cells=SIGN_SCAN_CELLS):
    r"""
    Returns all roots of the residual of ``family`` along ``solve_axis`` in
    ``solve_range``, the other parameters being taken from ``params``.

    The range is cut into ``cells`` equal cells, and each cell where the
    residual changes sign is refined by bisection.

    EXAMPLES::

        >>> p = MapParams(0.9, 0.7, -2.0, 0.0)
        >>> boundary_roots(BoundaryFamily("B_LRn1", 5), p, "tau_R", (1.1, 1.2))  # doctest: +ELLIPSIS
        [1.1504...]
    """
    solve_axis = ParameterId.parse(solve_axis)
    f = lambda v: boundary_residual(params.with_value(solve_axis, v), family)
    nodes = np.linspace(solve_range[0], solve_range[1], cells + 1)
    values = [f(v) for v in nodes]
    roots = []
    for i in range(cells):
        v0, v1 = values[i], values[i + 1]
        if v0 == 0.0:
            if not roots or roots[-1] != float(nodes[i]):
                roots.append(float(nodes[i]))
            continue
        if (v0 > 0) != (v1 > 0) and v1 != 0.0:
            roots.append(float(bisect_root(f, float(nodes[i]), float(nodes[i + 1]), v0, v1)))
    if values[-1] == 0.0:
        roots.append(float(nodes[-1]))
    return roots

def _annotate(family, params):
    if family.kind.curve_type() == "B":
        try:
            return admissible_interval(params, family.sigma(), tol=1e-6).status
        except PreconditionError:
            logger.debug("root of %s at %s does not pass the P_sigma(1) check", family, params)
            return None
    return None

def _trace_sample(family, params, sweep_axis, solve_axis, sweep_value, solve_range, cells):
    base = params.with_value(sweep_axis, sweep_value)
    points = []
    for root in boundary_roots(family, base, solve_axis, solve_range, cells):
        at_root = base.with_value(solve_axis, root)
        if family.kind.curve_type() == "H" and not certify_h_point(at_root, family, solve_axis):
            continue
        points.append(BoundaryPoint(float(sweep_value), root, _annotate(family, at_root)))
    return points

def trace_boundary_curve(family, params, sweep_axis, solve_axis, sweep_range, solve_range,
                         steps=200, n_jobs=1, cells=SIGN_SCAN_CELLS, verbose=False):
    r"""
    Traces a boundary curve through a window of a parameter plane.

    INPUT:

    - ``family`` -- BoundaryFamily
    - ``params`` -- MapParams; supplies the two fixed parameters.
    - ``sweep_axis``, ``solve_axis`` -- ParameterId or name; distinct axes.
    - ``sweep_range``, ``solve_range`` -- pairs of floats.
    - ``steps`` -- positive integer (default: `200`); sweep samples.
    - ``n_jobs`` -- integer (default: `1`); joblib workers over sweep samples.
    - ``cells`` -- integer (default: `256`); sign scan resolution.
    - ``verbose`` -- boolean (default: ``False``)

    OUTPUT: BoundaryCurve with points in sweep order. Several roots per
    sweep value are kept. Points of `B` curves carry the admissibility
    status of their segment set; points of `H` curves are kept only when
    certified to lie in the divergence region.
    """
    sweep_axis, solve_axis = ParameterId.parse(sweep_axis), ParameterId.parse(solve_axis)
    if sweep_axis is solve_axis:
        raise ValueError(f"sweep and solve axes must differ, got {sweep_axis.value} twice.")
    if steps < 1:
        raise ValueError(f"steps must be positive, got {steps}.")
    sweep_values = np.linspace(sweep_range[0], sweep_range[1], steps)
    log = logger.info if verbose else logger.debug
    log("tracing %s: %d sweep samples of %s, solving %s in %s",
        family, steps, sweep_axis.value, solve_axis.value, tuple(solve_range))

    batches = Parallel(n_jobs=n_jobs)(
        delayed(_trace_sample)(family, params, sweep_axis, solve_axis, float(s), solve_range, cells)
        for s in sweep_values
    )
    curve = BoundaryCurve(family, sweep_axis, solve_axis)
    for batch in batches:
        curve.points.extend(batch)
    log("traced %s: %d points", family, len(curve))
    return curve
