r"""
The discontinuous piecewise linear homogeneous map `F`.

`F` acts on the phase plane by one of two linear branches::

    F_L(x, y) = (tau_L x + y, -delta_L x)    if x < -1
    F_R(x, y) = (tau_R x + y, -delta_R x)    if x >= -1

The border abscissa is fixed at -1, and points on the border line itself are
iterated by the right branch. The fixed point `O = (0, 0)` lies in the right
partition.

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

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .errors import NongenericMapError, PreconditionError
from .mat2 import Mat2

BORDER = -1.0
DEFAULT_ESCAPE_RADIUS = 1e8

class Partition(Enum):
    r"""
    The two partitions `D_L = {x < -1}` and `D_R = {x >= -1}`.
    """
    L = "L"
    R = "R"

    def mirrored(self):
        return Partition.R if self is Partition.L else Partition.L

    def __str__(self):
        return self.value

class ParameterId(Enum):
    r"""
    Names of the four parameters of the map, used to select scan axes.
    """
    DELTA_L = "delta_L"
    DELTA_R = "delta_R"
    TAU_L = "tau_L"
    TAU_R = "tau_R"

    @classmethod
    def parse(cls, name):
        r"""
        Returns the parameter id named by ``name``.

        Accepts the canonical names (``delta_L``, ``tau_R``, ...), the short
        forms ``dL``, ``dR``, ``tL``, ``tR``, and is case insensitive apart
        from the trailing ``L``/``R``.

        EXAMPLES::

            >>> ParameterId.parse("tau_L") is ParameterId.TAU_L
            True
            >>> ParameterId.parse("dR") is ParameterId.DELTA_R
            True
        """
        if isinstance(name, ParameterId):
            return name
        key = str(name).strip()
        aliases = {"dL": "delta_L", "dR": "delta_R", "tL": "tau_L", "tR": "tau_R"}
        key = aliases.get(key, key)
        for member in cls:
            if member.value.lower() == key.lower() and member.value[-1] == key[-1].upper():
                return member
        raise ValueError(f"unknown parameter name {name!r}.")

    def mirrored(self):
        mirror = {
            ParameterId.DELTA_L: ParameterId.DELTA_R,
            ParameterId.DELTA_R: ParameterId.DELTA_L,
            ParameterId.TAU_L: ParameterId.TAU_R,
            ParameterId.TAU_R: ParameterId.TAU_L,
        }
        return mirror[self]

@dataclass(frozen=True)
class MapParams:
    r"""
    The four real parameters of `F`: the determinants ``delta_L``, ``delta_R``
    and the traces ``tau_L``, ``tau_R`` of the branch Jacobians.

    EXAMPLES::

        >>> p = MapParams(0.9, 0.7, -2.0, 1.16)
        >>> p.mirrored()
        MapParams(delta_L=0.7, delta_R=0.9, tau_L=1.16, tau_R=-2.0)
        >>> p.with_value(ParameterId.TAU_R, 1.1).tau_R
        1.1
    """
    delta_L: float
    delta_R: float
    tau_L: float
    tau_R: float

    def __post_init__(self):
        for name in ("delta_L", "delta_R", "tau_L", "tau_R"):
            value = getattr(self, name)
            if not isinstance(value, (int, float, np.floating, np.integer)) or not math.isfinite(value):
                raise PreconditionError(f"parameter {name} must be a finite real number, got {value!r}.")
            object.__setattr__(self, name, float(value))

    @classmethod
    def parse(cls, text):
        r"""
        Parses ``"delta_L,delta_R,tau_L,tau_R"`` as written on the command line.
        """
        try:
            values = [float(v) for v in str(text).split(",")]
        except ValueError:
            raise ValueError(f"cannot read map parameters from {text!r}.") from None
        if len(values) != 4:
            raise ValueError(f"expected four comma separated parameters, got {text!r}.")
        return cls(*values)

    def get(self, pid):
        '''Returns the value of the parameter named by ``pid``.'''
        return getattr(self, ParameterId.parse(pid).value)

    def with_value(self, pid, value):
        '''Returns a copy with the parameter ``pid`` set to ``value``.'''
        return replace(self, **{ParameterId.parse(pid).value: value})

    def mirrored(self):
        r"""
        Returns the parameters with the roles of `L` and `R` exchanged.

        The algebraic boundary families of one side are those of the other
        side evaluated at the mirrored parameters. The dynamics is not
        mirror symmetric, since the border stays at ``x = -1``.
        """
        return MapParams(self.delta_R, self.delta_L, self.tau_R, self.tau_L)

    def is_generic(self):
        '''True iff both branch determinants are nonzero.'''
        return self.delta_L != 0.0 and self.delta_R != 0.0

    def as_tuple(self):
        return (self.delta_L, self.delta_R, self.tau_L, self.tau_R)

    def to_dict(self):
        return {"delta_L": self.delta_L, "delta_R": self.delta_R, "tau_L": self.tau_L, "tau_R": self.tau_R}

    @classmethod
    def from_dict(cls, data):
        return cls(data["delta_L"], data["delta_R"], data["tau_L"], data["tau_R"])

    def __str__(self):
        return f"{self.delta_L!r},{self.delta_R!r},{self.tau_L!r},{self.tau_R!r}"

@dataclass(frozen=True)
class Point2:
    r"""
    A point of the phase plane. Non-finite coordinates are only produced by
    :func:`step` on overflow and mark an escaped point.
    """
    x: float
    y: float

    def is_finite(self):
        return math.isfinite(self.x) and math.isfinite(self.y)

    def norm(self):
        return math.hypot(self.x, self.y)

    def scaled(self, alpha):
        return Point2(alpha*self.x, alpha*self.y)

    def as_tuple(self):
        return (self.x, self.y)

    def to_dict(self):
        return {"x": self.x, "y": self.y}

    @classmethod
    def from_dict(cls, data):
        return cls(data["x"], data["y"])

def _as_point(p):
    return p if isinstance(p, Point2) else Point2(float(p[0]), float(p[1]))

class Orbit:
    r"""
    A finite piece of trajectory of `F` together with its itinerary.

    ``points[k]`` is the `k`-th iterate and ``itinerary[k]`` its partition. If
    the trajectory left the escape disk, ``escaped_at`` is the index of the
    first iterate outside it; that iterate is not stored, so
    ``len(points) == escaped_at``.
    """
    def __init__(self, points, itinerary, escaped_at=None):
        if len(points) != len(itinerary):
            raise ValueError(f"orbit has {len(points)} points but {len(itinerary)} itinerary letters.")
        self.points = list(points)
        self.itinerary = list(itinerary)
        self.escaped_at = escaped_at

    def __len__(self):
        return len(self.points)

    def escaped(self):
        return self.escaped_at is not None

    def itinerary_word(self):
        '''Returns the itinerary as a string over ``{L, R}``.'''
        return "".join(label.value for label in self.itinerary)

    def as_array(self):
        '''Returns the points as a float array of shape ``(len(self), 2)``.'''
        return np.array([p.as_tuple() for p in self.points], dtype=float).reshape(-1, 2)

def partition_of(p):
    r"""
    Returns the partition containing ``p``.

    INPUT:

    - ``p`` -- Point2 or pair of floats; a finite point.

    OUTPUT: Partition; ``L`` if ``x < -1``, otherwise ``R``. The border line
    ``x = -1`` belongs to ``R``.

    EXAMPLES::

        >>> partition_of(Point2(-2, 0)), partition_of(Point2(-1, 5))
        (<Partition.L: 'L'>, <Partition.R: 'R'>)
    """
    p = _as_point(p)
    if not p.is_finite():
        raise PreconditionError(f"cannot locate the non-finite point {p}.")
    return Partition.L if p.x < BORDER else Partition.R

def branch_matrix(params, label):
    r"""
    Returns the Jacobian ``[[tau_i, 1], [-delta_i, 0]]`` of branch ``label``.
    """
    if Partition(label) is Partition.L:
        return Mat2(params.tau_L, 1.0, -params.delta_L, 0.0)
    return Mat2(params.tau_R, 1.0, -params.delta_R, 0.0)

def step(params, p):
    r"""
    Returns ``F(p)``.

    The result may have infinite coordinates if the arithmetic overflows;
    :func:`iterate_orbit` treats such points as escaped.

    EXAMPLES::

        >>> step(MapParams(0.9, 0.7, -2.0, 1.16), Point2(-2, 0.5))
        Point2(x=4.5, y=1.8)
    """
    p = _as_point(p)
    if partition_of(p) is Partition.L:
        return Point2(params.tau_L*p.x + p.y, -params.delta_L*p.x)
    return Point2(params.tau_R*p.x + p.y, -params.delta_R*p.x)

def iterate_orbit(params, p0, n_steps, escape_radius=DEFAULT_ESCAPE_RADIUS):
    r"""
    Iterates `F` from ``p0``.

    INPUT:

    - ``params`` -- MapParams
    - ``p0`` -- Point2; the initial point.
    - ``n_steps`` -- positive integer; the number of applications of `F`.
    - ``escape_radius`` -- positive float (default: ``1e8``).

    OUTPUT: Orbit with ``n_steps + 1`` points, or fewer if the trajectory
    escapes, in which case ``escaped_at`` is set.
    """
    if n_steps < 1:
        raise PreconditionError(f"n_steps must be at least 1, got {n_steps}.")
    if not escape_radius > 0:
        raise PreconditionError(f"escape_radius must be positive, got {escape_radius}.")

    p = _as_point(p0)
    points, itinerary = [], []
    for k in range(n_steps + 1):
        if not p.is_finite() or p.norm() > escape_radius:
            return Orbit(points, itinerary, escaped_at=k)
        points.append(p)
        itinerary.append(partition_of(p))
        if k < n_steps:
            p = step(params, p)
    return Orbit(points, itinerary)

def inverse_images(params, p):
    r"""
    Returns the preimages of ``p`` under `F`.

    Each branch is inverted and the candidate is kept only if it lies in the
    partition of that branch, so the result has 0, 1 or 2 points. Candidates
    are listed in the order ``L``, ``R``.

    EXAMPLES::

        >>> inverse_images(MapParams(0.9, 0.7, -2.0, 1.16), Point2(0, 0.8))
        []

    TESTS::

        >>> inverse_images(MapParams(0.0, 0.7, -2.0, 1.16), Point2(0, 0))
        Traceback (most recent call last):
        ...
        wqa_lib.errors.NongenericMapError: ...
    """
    if not params.is_generic():
        raise NongenericMapError(
            f"F is not invertible branchwise for delta_L={params.delta_L}, delta_R={params.delta_R}.")
    p = _as_point(p)
    preimages = []
    for label, tau, delta in ((Partition.L, params.tau_L, params.delta_L),
                              (Partition.R, params.tau_R, params.delta_R)):
        q = Point2(-p.y/delta, p.x + tau*p.y/delta)
        if partition_of(q) is label:
            preimages.append(q)
    return preimages

def critical_lines(params):
    r"""
    Returns the ordinates ``(delta_L, delta_R)`` of the critical lines
    `C^L = F_L(C_{-1})` and `C^R = F_R(C_{-1})`.
    """
    return (params.delta_L, params.delta_R)

def fixed_points(params):
    r"""
    Returns the fixed points of `F` found by solving ``(J_i - I) p = 0`` in
    each partition and keeping solutions inside that partition.

    Raises PreconditionError if a branch has the eigenvalue 1, since then the
    fixed points are not isolated (see
    :func:`wqa_lib.invariantsets.degenerate_set_at`).
    """
    found = []
    for label in Partition:
        A = branch_matrix(params, label).minus_identity()
        if A.det() == 0.0:
            raise PreconditionError(f"J_{label} has the eigenvalue 1; fixed points are not isolated.")
        solution = np.linalg.solve(A.as_array(), np.zeros(2))
        q = Point2(float(solution[0]) + 0.0, float(solution[1]) + 0.0)
        if partition_of(q) is label and q not in found:
            found.append(q)
    return found
