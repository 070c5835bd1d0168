r"""
One and two parameter scans of `F`.

A scan visits a grid of parameter values, classifies the trajectories of a
fixed battery of seeds at each of them and summarizes the outcome as a
:class:`CellClass`: convergence to `O` only, a bounded aperiodic attractor,
coexistence, divergence only, or divergence mixed with convergence to `O`.

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
import json
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np
from joblib import Parallel, delayed

from . import orbitkernels as kernels
from .classifier import (
    AttractorFingerprint, AttractorRegistry, ClassifyOptions, StabilityKind, fixed_point_stability,
)
from .errors import ConfigError
from .invariantsets import BoundaryFamily, boundary_residual, trace_boundary_curve
from .pwlmap import MapParams, ParameterId, Point2

logger = logging.getLogger(__name__)

MAGIC = b"WQAS"
FORMAT_VERSION = 1
CRITICAL_OFFSET = 1e-3

# Fixed offsets added to the battery seeds, so that no seed sits on a ray
# through O shared by several cells.
JITTER = (
    (1.3e-3, -0.7e-3), (-0.9e-3, 1.1e-3), (0.4e-3, 1.7e-3), (-1.6e-3, -0.3e-3),
    (0.8e-3, -1.4e-3), (-0.2e-3, 0.6e-3), (1.9e-3, 0.2e-3), (-1.1e-3, -1.8e-3),
)

def _ring(count, r_min, r_max, turns=1):
    seeds = []
    for k in range(count):
        r = r_min*(r_max/r_min)**(k/(count - 1)) if count > 1 else r_min
        theta = (2*k + 1)*math.pi/8*turns
        dx, dy = JITTER[k % len(JITTER)]
        seeds.append(Point2(r*math.cos(theta) + dx, r*math.sin(theta) + dy))
    return seeds

def seed_points(strategy, params):
    r"""
    Returns the seeds of ``strategy`` for the map at ``params``.

    INPUT:

    - ``strategy`` -- one of ``"default"``, ``"single"``, ``"dense"``
    - ``params`` -- MapParams

    OUTPUT: list of Point2

    ``default`` is eight seeds with radii spaced geometrically from 0.5 to 20
    at fixed angles, plus the point `(-1 - 10^{-3}, delta_L)` next to the
    discontinuity line and the left critical line. ``dense`` uses 24 ring
    seeds and the same extra point. ``single`` is the first default seed.

    EXAMPLES::

        >>> len(seed_points("default", MapParams(0.9, 0.7, -2.0, 1.16)))
        9
    """
    near_critical = Point2(-1.0 - CRITICAL_OFFSET, params.delta_L)
    if strategy == "default":
        return _ring(8, 0.5, 20.0) + [near_critical]
    if strategy == "dense":
        return _ring(24, 0.5, 20.0, turns=7) + [near_critical]
    if strategy == "single":
        return _ring(8, 0.5, 20.0)[:1]
    raise ConfigError(f"unknown seed strategy {strategy!r}; expected one of {sorted(SEED_STRATEGIES)}.")

SEED_STRATEGIES = {"default": 9, "dense": 25, "single": 1}

@dataclass(frozen=True)
class ScanAxis:
    r"""
    A scanned parameter with its range and sample count.

    Values are the centers of ``samples`` equal cells of ``[lo, hi]``, so a
    single sample sits in the middle of the range.
    """
    parameter: ParameterId
    lo: float
    hi: float
    samples: int

    def __post_init__(self):
        object.__setattr__(self, "parameter", ParameterId.parse(self.parameter))
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise ConfigError(f"axis {self.parameter.value} needs a finite range lo < hi, got [{self.lo}, {self.hi}].")
        if int(self.samples) < 1:
            raise ConfigError(f"axis {self.parameter.value} needs at least one sample, got {self.samples}.")
        object.__setattr__(self, "samples", int(self.samples))

    def values(self):
        return self.lo + (np.arange(self.samples) + 0.5)*(self.hi - self.lo)/self.samples

    def index_of(self, value):
        r'''Returns the index of the cell containing ``value``, or ``None``.'''
        i = int(math.floor((value - self.lo)/(self.hi - self.lo)*self.samples))
        if i == self.samples and value == self.hi:
            i -= 1
        return i if 0 <= i < self.samples else None

    @classmethod
    def parse(cls, text):
        r"""
        Reads ``"name:lo:hi:samples"``, e.g. ``"tau_L:-3:3:200"``.
        """
        parts = str(text).split(":")
        if len(parts) != 4:
            raise ConfigError(f"expected name:lo:hi:samples for a scan axis, got {text!r}.")
        try:
            return cls(ParameterId.parse(parts[0]), float(parts[1]), float(parts[2]), int(parts[3]))
        except ValueError as e:
            raise ConfigError(f"cannot read scan axis {text!r}: {e}") from None

    def to_dict(self):
        return {"parameter": self.parameter.value, "lo": self.lo, "hi": self.hi, "samples": self.samples}

    @classmethod
    def from_dict(cls, data):
        return cls(ParameterId.parse(data["parameter"]), float(data["lo"]), float(data["hi"]), int(data["samples"]))

@dataclass(frozen=True)
class ScanSpec:
    r"""
    What a scan visits: one or two axes, the values of the other parameters
    (taken from ``base``), the seed strategy and the classification options.
    """
    axis1: ScanAxis
    axis2: Optional[ScanAxis]
    base: MapParams
    seeds: str = "default"
    options: ClassifyOptions = field(default_factory=ClassifyOptions)

    def __post_init__(self):
        if self.axis2 is not None and self.axis1.parameter is self.axis2.parameter:
            raise ConfigError(f"scan axes must be distinct parameters, got {self.axis1.parameter.value} twice.")
        if self.seeds not in SEED_STRATEGIES:
            raise ConfigError(f"unknown seed strategy {self.seeds!r}; expected one of {sorted(SEED_STRATEGIES)}.")

    @property
    def shape(self):
        '''``(rows, cols)``: rows follow ``axis2``, columns ``axis1``.'''
        return (self.axis2.samples if self.axis2 is not None else 1, self.axis1.samples)

    def seed_count(self):
        return SEED_STRATEGIES[self.seeds]

    def params_at(self, v1, v2=None):
        params = self.base.with_value(self.axis1.parameter, float(v1))
        if self.axis2 is not None:
            params = params.with_value(self.axis2.parameter, float(v2))
        return params

    def to_dict(self):
        return {
            "axis1": self.axis1.to_dict(),
            "axis2": self.axis2.to_dict() if self.axis2 is not None else None,
            "base": self.base.to_dict(),
            "seeds": self.seeds,
            "options": self.options.to_dict(),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            ScanAxis.from_dict(data["axis1"]),
            ScanAxis.from_dict(data["axis2"]) if data.get("axis2") is not None else None,
            MapParams.from_dict(data["base"]),
            data.get("seeds", "default"),
            ClassifyOptions.from_dict(data.get("options", {})),
        )

class CellClass(Enum):
    r"""
    Summary of the seed battery at one parameter point.

    A bounded aperiodic attractor takes precedence: a cell with one is
    ``WQA``, or ``coexistence`` if `O` or a second bounded attractor is also
    reached. Without one, divergence gives ``divergence-only`` or, if some
    seeds converge to `O`, ``mixed``.
    """
    O_ONLY = "O-only"
    WQA = "WQA"
    COEXISTENCE = "coexistence"
    DIVERGENCE_ONLY = "divergence-only"
    MIXED = "mixed"

    def code(self):
        return _CELL_CODES.index(self)

    @classmethod
    def from_code(cls, code):
        return _CELL_CODES[int(code)]

    def has_bounded_attractor(self):
        return self in (CellClass.WQA, CellClass.COEXISTENCE)

    def is_divergent(self):
        '''True for the classes drawn as divergence regions.'''
        return self in (CellClass.DIVERGENCE_ONLY, CellClass.MIXED)

    @classmethod
    def summarize(cls, converged, diverged, attractors):
        if attractors >= 2 or (attractors == 1 and converged):
            return cls.COEXISTENCE
        if attractors == 1:
            return cls.WQA
        if diverged and converged:
            return cls.MIXED
        if diverged:
            return cls.DIVERGENCE_ONLY
        return cls.O_ONLY

_CELL_CODES = [CellClass.O_ONLY, CellClass.WQA, CellClass.COEXISTENCE, CellClass.DIVERGENCE_ONLY, CellClass.MIXED]

@dataclass
class CellRecord:
    r"""
    Outcome of the seed battery at one parameter point. ``clusters[k]`` is
    the id, local to the cell, of the bounded attractor reached from seed
    ``k``, or ``-1``.
    """
    cell_class: CellClass
    attractor_count: int
    converged: int
    diverged: int
    bounded: int
    clusters: List[int]

def record_dtype(seeds):
    return np.dtype([
        ("cell_class", "u1"),
        ("attractor_count", "u1"),
        ("converged", "<u2"),
        ("diverged", "<u2"),
        ("bounded", "<u2"),
        ("clusters", "<i2", (seeds,)),
    ])

def classify_cell(params, seeds, opts):
    r"""
    Runs the seed battery at ``params`` and returns its
    :class:`CellRecord` together with the final points of the seeds.
    """
    pars = (params.delta_L, params.delta_R, params.tau_L, params.tau_R)
    attracting = fixed_point_stability(params).kind is StabilityKind.ATTRACTING
    registry = AttractorRegistry()
    converged = diverged = bounded = 0
    clusters, finals = [], []
    for seed in seeds:
        status, x, y, _ = kernels.run_orbit(*pars, seed.x, seed.y, opts.max_iter, opts.transient,
                                            opts.escape_radius, opts.origin_tolerance, attracting)
        final = Point2(float(x), float(y)) if math.isfinite(x) and math.isfinite(y) else None
        cluster = -1
        if status == kernels.STATUS_BOUNDED:
            cluster = registry.match_orbit(params, final, escape_radius=opts.escape_radius)
            if cluster is None:
                fp = AttractorFingerprint.from_tail(params, final, opts.fingerprint_samples,
                                                    escape_radius=opts.escape_radius)
                if fp is None:
                    status = kernels.STATUS_DIVERGED
                else:
                    cluster = registry.match_or_add(fp)
        if status == kernels.STATUS_CONVERGED:
            converged += 1
        elif status == kernels.STATUS_DIVERGED:
            diverged += 1
            cluster = -1
        else:
            bounded += 1
        clusters.append(cluster)
        finals.append(final if status == kernels.STATUS_BOUNDED else None)
    cell_class = CellClass.summarize(converged, diverged, len(registry))
    return CellRecord(cell_class, len(registry), converged, diverged, bounded, clusters), finals

class ScanGrid:
    r"""
    Cell records of a scan, stored row-major in a numpy structured array of
    shape ``spec.shape``.

    ``overlays`` holds the boundary curves attached by
    :func:`overlay_boundaries`; they are not part of the serialized grid.
    """
    def __init__(self, spec, records):
        self.spec = spec
        self.records = np.asarray(records, dtype=record_dtype(spec.seed_count()))
        if self.records.shape != spec.shape:
            raise ValueError(f"records of shape {self.records.shape} do not match the scan shape {spec.shape}.")
        self.overlays = []

    @property
    def shape(self):
        return self.records.shape

    def classes(self):
        '''Array of :class:`CellClass` codes, shape ``(rows, cols)``.'''
        return self.records["cell_class"].copy()

    def class_at(self, row, col):
        return CellClass.from_code(self.records["cell_class"][row, col])

    def record(self, row, col):
        r = self.records[row, col]
        return CellRecord(CellClass.from_code(r["cell_class"]), int(r["attractor_count"]),
                          int(r["converged"]), int(r["diverged"]), int(r["bounded"]),
                          [int(c) for c in r["clusters"]])

    def cell_of(self, v1, v2=None):
        r"""
        Returns ``(row, col)`` of the cell containing the parameter values,
        or ``None`` outside the window.
        """
        col = self.spec.axis1.index_of(v1)
        row = 0 if self.spec.axis2 is None else self.spec.axis2.index_of(v2)
        if row is None or col is None:
            return None
        return row, col

    def __eq__(self, other):
        return (isinstance(other, ScanGrid) and self.spec == other.spec
                and self.records.tobytes() == other.records.tobytes())

    def to_bytes(self):
        header = json.dumps(self.spec.to_dict(), sort_keys=True).encode("utf-8")
        rows, cols = self.shape
        return b"".join([
            MAGIC,
            np.array([FORMAT_VERSION], dtype="<u2").tobytes(),
            np.array([len(header)], dtype="<u4").tobytes(),
            header,
            np.array([rows, cols], dtype="<u4").tobytes(),
            np.array([self.spec.seed_count()], dtype="<u2").tobytes(),
            np.ascontiguousarray(self.records).tobytes(),
        ])

    @classmethod
    def from_bytes(cls, data):
        if data[:4] != MAGIC:
            raise ConfigError("not a scan grid file: bad magic.")
        version = int(np.frombuffer(data, dtype="<u2", count=1, offset=4)[0])
        if version != FORMAT_VERSION:
            raise ConfigError(f"unsupported scan grid version {version}.")
        length = int(np.frombuffer(data, dtype="<u4", count=1, offset=6)[0])
        offset = 10 + length
        spec = ScanSpec.from_dict(json.loads(data[10:offset].decode("utf-8")))
        rows, cols = (int(v) for v in np.frombuffer(data, dtype="<u4", count=2, offset=offset))
        seeds = int(np.frombuffer(data, dtype="<u2", count=1, offset=offset + 8)[0])
        if (rows, cols) != spec.shape or seeds != spec.seed_count():
            raise ConfigError(f"scan grid header ({rows}x{cols}, {seeds} seeds) disagrees with its spec.")
        records = np.frombuffer(data, dtype=record_dtype(seeds), count=rows*cols, offset=offset + 10)
        return cls(spec, records.reshape(rows, cols).copy())

    def write(self, path):
        with open(path, "wb") as f:
            f.write(self.to_bytes())

    @classmethod
    def read(cls, path):
        with open(path, "rb") as f:
            return cls.from_bytes(f.read())

    def to_csv(self, path):
        r"""
        Writes one row per cell with the parameter values, the class, the
        seed counts and the cluster ids of the seeds separated by spaces.
        """
        a1, a2 = self.spec.axis1, self.spec.axis2
        v1 = a1.values()
        v2 = a2.values() if a2 is not None else [None]
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow([a1.parameter.value, a2.parameter.value if a2 is not None else "",
                             "class", "attractor_count", "converged", "diverged", "bounded", "clusters"])
            for row in range(self.shape[0]):
                for col in range(self.shape[1]):
                    r = self.record(row, col)
                    writer.writerow([repr(float(v1[col])), repr(float(v2[row])) if a2 is not None else "",
                                     r.cell_class.value, r.attractor_count, r.converged, r.diverged,
                                     r.bounded, " ".join(str(c) for c in r.clusters)])

def _scan_row(spec, v2):
    out = []
    for v1 in spec.axis1.values():
        params = spec.params_at(v1, v2)
        record, _ = classify_cell(params, seed_points(spec.seeds, params), spec.options)
        out.append((record.cell_class.code(), min(record.attractor_count, 255), record.converged,
                    record.diverged, record.bounded, tuple(record.clusters)))
    return out

def scan_2d(spec, n_jobs=1, verbose=False):
    r"""
    Classifies every cell of a two parameter scan.

    INPUT:

    - ``spec`` -- ScanSpec with ``axis2`` set
    - ``n_jobs`` -- integer (default: `1`); joblib workers over rows.
    - ``verbose`` -- boolean (default: ``False``)

    OUTPUT: ScanGrid. The records depend only on ``spec``: each cell is
    computed independently and written to its own slot.
    """
    if spec.axis2 is None:
        raise ConfigError("scan_2d needs two axes.")
    log = logger.info if verbose else logger.debug
    rows, cols = spec.shape
    log("scanning %s x %s (%dx%d, %d seeds per cell) at %s",
        spec.axis1.parameter.value, spec.axis2.parameter.value, cols, rows, spec.seed_count(), spec.base)
    results = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_scan_row)(spec, float(v2)) for v2 in spec.axis2.values())
    records = np.array(results, dtype=record_dtype(spec.seed_count())).reshape(rows, cols)
    grid = ScanGrid(spec, records)
    if verbose or logger.isEnabledFor(logging.DEBUG):
        counts = {c.value: int((grid.classes() == c.code()).sum()) for c in CellClass}
        log("scan done: %s", counts)
    return grid

@dataclass
class Bifurcation1D:
    r"""
    A one parameter bifurcation diagram: for every sweep value, samples of
    one coordinate of the attractors reached and the class of the seed
    battery. Sweep values of class ``divergence-only`` have no samples.
    """
    parameter: ParameterId
    projection: str
    sweep_values: np.ndarray
    samples: List[np.ndarray]
    classes: List[CellClass]

    def __len__(self):
        return len(self.sweep_values)

    def sample_count(self):
        return sum(len(s) for s in self.samples)

    def divergent_values(self):
        return [float(v) for v, c in zip(self.sweep_values, self.classes) if c is CellClass.DIVERGENCE_ONLY]

    def to_csv(self, path):
        r"""
        Writes ``sweep_value, class, coordinate`` with one row per sample; a
        sweep value without samples gets one row with an empty coordinate.
        """
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["sweep_value", "class", self.projection])
            for v, c, s in zip(self.sweep_values, self.classes, self.samples):
                if len(s) == 0:
                    writer.writerow([repr(float(v)), c.value, ""])
                for value in s:
                    writer.writerow([repr(float(v)), c.value, repr(float(value))])

def _sweep_sample(spec, value, projection, n_tail, extra_seed=None):
    params = spec.params_at(value)
    seeds = seed_points(spec.seeds, params)
    if extra_seed is not None:
        seeds = [extra_seed] + seeds
    record, finals = classify_cell(params, seeds, spec.options)
    pars = (params.delta_L, params.delta_R, params.tau_L, params.tau_R)
    chunks = []
    if record.converged:
        chunks.append(np.zeros(1))
    seen = set()
    last = None
    for cluster, final in zip(record.clusters, finals):
        if final is None:
            continue
        last = final
        if cluster in seen:
            continue
        seen.add(cluster)
        out = np.empty(n_tail)
        count = kernels.tail_samples(*pars, final.x, final.y, projection, spec.options.escape_radius, out)
        chunks.append(out[:count])
    samples = np.concatenate(chunks) if chunks else np.empty(0)
    return samples, record.cell_class, last

def scan_1d(spec, projection="x", n_tail=1000, continuation=False, n_jobs=1, verbose=False):
    r"""
    Computes a one parameter bifurcation diagram.

    INPUT:

    - ``spec`` -- ScanSpec without ``axis2``
    - ``projection`` -- ``"x"`` or ``"y"`` (default: ``"x"``)
    - ``n_tail`` -- positive integer (default: `1000`); samples recorded per
      bounded attractor after the transient.
    - ``continuation`` -- boolean (default: ``False``); if set, the final
      state at one sweep value is prepended to the seeds of the next one and
      the sweep runs sequentially.
    - ``n_jobs`` -- integer (default: `1`)
    - ``verbose`` -- boolean (default: ``False``)

    OUTPUT: Bifurcation1D. Each distinct bounded attractor contributes
    ``n_tail`` samples and convergence to `O` contributes the single sample
    `0`.
    """
    if spec.axis2 is not None:
        raise ConfigError("scan_1d needs a single axis.")
    if projection not in ("x", "y"):
        raise ConfigError(f"projection must be 'x' or 'y', got {projection!r}.")
    if n_tail < 1:
        raise ConfigError(f"n_tail must be positive, got {n_tail}.")
    log = logger.info if verbose else logger.debug
    proj = 0 if projection == "x" else 1
    values = spec.axis1.values()
    log("sweeping %s over %d values at %s", spec.axis1.parameter.value, len(values), spec.base)
    if continuation:
        results, carry = [], None
        for v in values:
            samples, cell_class, last = _sweep_sample(spec, float(v), proj, n_tail, carry)
            results.append((samples, cell_class, last))
            carry = last
    else:
        results = Parallel(n_jobs=n_jobs, prefer="threads")(
            delayed(_sweep_sample)(spec, float(v), proj, n_tail) for v in values)
    return Bifurcation1D(spec.axis1.parameter, projection, values,
                         [r[0] for r in results], [r[1] for r in results])

def _depends_on(family, params, pid, probe=0.37):
    value = params.get(pid)
    base = boundary_residual(params, family)
    for shift in (probe, -probe, 2*probe):
        if not math.isclose(boundary_residual(params.with_value(pid, value + shift), family), base,
                            rel_tol=1e-12, abs_tol=1e-12):
            return True
    return False

def overlay_boundaries(grid, families, steps=None, n_jobs=1, verbose=False):
    r"""
    Traces boundary curves through the window of a two parameter scan and
    attaches them to ``grid.overlays``.

    INPUT:

    - ``grid`` -- ScanGrid of a two parameter scan
    - ``families`` -- list of BoundaryFamily or of strings ``"KIND:n"``
    - ``steps`` -- integer (default: twice the samples of ``axis1``, at
      least 100); sweep samples per curve.

    OUTPUT: ``grid``, with one BoundaryCurve per family appended.

    Each curve is swept along ``axis1`` and solved along ``axis2``; if its
    residual does not depend on ``axis2`` the roles are exchanged. A family
    whose residual depends on neither axis is rejected with ConfigError.
    """
    spec = grid.spec
    if spec.axis2 is None:
        raise ConfigError("boundary overlays need a two parameter scan.")
    steps = steps or max(2*spec.axis1.samples, 100)
    probe_at = spec.params_at(spec.axis1.values()[0], spec.axis2.values()[0])
    for family in families:
        family = family if isinstance(family, BoundaryFamily) else BoundaryFamily.parse(family)
        sweep, solve = spec.axis1, spec.axis2
        if not _depends_on(family, probe_at, solve.parameter):
            if not _depends_on(family, probe_at, sweep.parameter):
                raise ConfigError(f"{family} does not depend on {sweep.parameter.value} or {solve.parameter.value}.")
            sweep, solve = solve, sweep
        curve = trace_boundary_curve(family, spec.base, sweep.parameter, solve.parameter,
                                     (sweep.lo, sweep.hi), (solve.lo, solve.hi),
                                     steps=steps, n_jobs=n_jobs, verbose=verbose)
        grid.overlays.append(curve)
    return grid
