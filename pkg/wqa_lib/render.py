r"""
Images of scans, basins and bifurcation diagrams.

Raw grids are written as indexed color images with one pixel per cell and the
first row at the bottom. Annotated figures (boundary overlays, phase
portraits, bifurcation diagrams) are drawn with matplotlib. Without
matplotlib, raw grids fall back to plain portable pixmaps and annotated
figures are skipped.

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

import logging
import os

import numpy as np

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:  # pragma: no cover
    matplotlib = None
    plt = None

from . import orbitkernels as kernels
from .errors import ConfigError
from .scanner import CellClass

logger = logging.getLogger(__name__)

PALETTE_VERSION = 1

# Scan palettes, keyed by palette id.
PALETTES = {
    "default": {
        CellClass.O_ONLY: "#2060FF",
        CellClass.WQA: "#FFD700",
        CellClass.COEXISTENCE: "#FFD700",
        CellClass.DIVERGENCE_ONLY: "#9E9E9E",
        CellClass.MIXED: "#C08000",
    },
    # Coexistence and mixed cells get their own colors.
    "detailed": {
        CellClass.O_ONLY: "#2060FF",
        CellClass.WQA: "#FFD700",
        CellClass.COEXISTENCE: "#FF9F00",
        CellClass.DIVERGENCE_ONLY: "#9E9E9E",
        CellClass.MIXED: "#C08000",
    },
}

O_BASIN = "#9CC8FF"
DIVERGENCE = "#9E9E9E"
ATTRACTOR_BASINS = ("#C8A000", "#E07B39", "#9CBF3B", "#C77DBB")
ATTRACTOR = "#000000"
SEGMENTS = "#00008B"
CURVE_COLORS = ("#D62728", "#1F77B4", "#2CA02C", "#9467BD", "#8C564B", "#E377C2", "#17BECF")

def hex_to_rgb(color):
    r'''``"#RRGGBB"`` to a triple of integers.'''
    color = color.lstrip("#")
    return tuple(int(color[i:i + 2], 16) for i in (0, 2, 4))

def palette(name):
    if name not in PALETTES:
        raise ConfigError(f"unknown palette {name!r}; expected one of {sorted(PALETTES)}.")
    return PALETTES[name]

def scan_rgb(grid, palette_name="default"):
    r"""
    Returns the scan as an RGB array of shape ``(rows, cols, 3)`` with the
    first parameter row at the bottom.
    """
    colors = palette(palette_name)
    table = np.array([hex_to_rgb(colors[CellClass.from_code(code)]) for code in range(len(CellClass))],
                     dtype=np.uint8)
    return table[grid.classes()][::-1]

def phase_rgb(phase_grid):
    r"""
    Returns the basin coloring of a :class:`PhaseGrid`: `O` in light blue,
    bounded attractors in yellow shades by cluster id, divergence in gray.
    """
    rgb = np.empty(phase_grid.status.shape + (3,), dtype=np.uint8)
    rgb[...] = hex_to_rgb(DIVERGENCE)
    rgb[phase_grid.status == kernels.STATUS_CONVERGED] = hex_to_rgb(O_BASIN)
    bounded = phase_grid.status == kernels.STATUS_BOUNDED
    for cluster in np.unique(phase_grid.cluster[bounded]):
        color = ATTRACTOR_BASINS[int(cluster) % len(ATTRACTOR_BASINS)]
        rgb[bounded & (phase_grid.cluster == cluster)] = hex_to_rgb(color)
    return rgb[::-1]

def write_ppm(rgb, path):
    rows, cols, _ = rgb.shape
    with open(path, "wb") as f:
        f.write(f"P6\n{cols} {rows}\n255\n".encode("ascii"))
        f.write(np.ascontiguousarray(rgb, dtype=np.uint8).tobytes())
    return path

def write_image(rgb, path):
    r"""
    Writes ``rgb`` one pixel per cell. Returns the path written, which ends
    in ``.ppm`` when no PNG encoder is available.
    """
    if matplotlib is None:
        path = os.path.splitext(path)[0] + ".ppm"
        logger.warning("matplotlib unavailable, writing %s", path)
        return write_ppm(rgb, path)
    plt.imsave(path, np.ascontiguousarray(rgb), format="png")
    return path

def _axis_label(parameter):
    return {"delta_L": r"$\delta_L$", "delta_R": r"$\delta_R$",
            "tau_L": r"$\tau_L$", "tau_R": r"$\tau_R$"}[parameter.value]

def _new_figure():
    if plt is None:
        logger.warning("matplotlib unavailable, skipping figure")
        return None, None
    return plt.subplots(1, 1, figsize=(7, 7))

def _save(fig, path):
    fig.savefig(path, dpi=150, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)
    return path

def plot_scan(grid, path, palette_name="default"):
    r"""
    Draws a two parameter scan with its boundary overlays, one labeled
    polyline per curve arc. Returns the path, or ``None`` without matplotlib.
    """
    fig, ax = _new_figure()
    if fig is None:
        return None
    a1, a2 = grid.spec.axis1, grid.spec.axis2
    ax.imshow(scan_rgb(grid, palette_name), extent=(a1.lo, a1.hi, a2.lo, a2.hi),
              aspect="auto", interpolation="nearest")
    for i, curve in enumerate(grid.overlays):
        color = CURVE_COLORS[i % len(CURVE_COLORS)]
        swapped = curve.sweep_axis is not a1.parameter
        label = f"${curve.family.label()}$"
        for _, points in curve.arcs():
            xs = [p.sweep_value for p in points]
            ys = [p.solve_value for p in points]
            if swapped:
                xs, ys = ys, xs
            ax.plot(xs, ys, ".", color=color, markersize=2, label=label)
            label = None
    if grid.overlays:
        ax.legend(loc="best", fontsize="small", markerscale=4)
    ax.set_xlim(a1.lo, a1.hi)
    ax.set_ylim(a2.lo, a2.hi)
    ax.set_xlabel(_axis_label(a1.parameter))
    ax.set_ylabel(_axis_label(a2.parameter))
    return _save(fig, path)

def plot_phase(phase_grid, path, attractor=None, segment_sets=(), eigenlines=()):
    r"""
    Draws a phase portrait.

    INPUT:

    - ``phase_grid`` -- PhaseGrid; the basin coloring.
    - ``path`` -- output path
    - ``attractor`` -- optional array of shape ``(k, 2)``; drawn in black.
    - ``segment_sets`` -- SegmentSets drawn in dark blue.
    - ``eigenlines`` -- pairs ``(point, slope)`` drawn as dark blue dashed
      lines.

    The discontinuity line `x = -1` and the critical lines `y = delta_L`,
    `y = delta_R` are always drawn. Returns the path, or ``None`` without
    matplotlib.
    """
    fig, ax = _new_figure()
    if fig is None:
        return None
    x0, x1, y0, y1 = phase_grid.window
    params = phase_grid.params
    ax.imshow(phase_rgb(phase_grid), extent=(x0, x1, y0, y1), aspect="auto", interpolation="nearest")
    ax.axvline(-1.0, color="k", linewidth=0.6)
    ax.axhline(params.delta_L, color="k", linewidth=0.6, linestyle="--")
    ax.axhline(params.delta_R, color="k", linewidth=0.6, linestyle=":")
    if attractor is not None and len(attractor):
        ax.plot(attractor[:, 0], attractor[:, 1], ",", color=ATTRACTOR)
    extent = 2.0*max(abs(x0), abs(x1), abs(y0), abs(y1))
    for segments in segment_sets:
        for segment in segments:
            lo, hi = (max(segment.t_lo, -extent), min(segment.t_hi, extent))
            a, b = segment.point(lo), segment.point(hi)
            ax.plot([a.x, b.x], [a.y, b.y], color=SEGMENTS, linewidth=1.2)
    for (px, py), slope in eigenlines:
        xs = np.array([x0, x1])
        if np.isinf(slope):
            ax.plot([px, px], [y0, y1], color=SEGMENTS, linewidth=0.8, linestyle="--")
        else:
            ax.plot(xs, py + slope*(xs - px), color=SEGMENTS, linewidth=0.8, linestyle="--")
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.set_xlabel("$x$")
    ax.set_ylabel("$y$")
    ax.set_title(str(params), fontsize="small")
    return _save(fig, path)

def plot_bifurcation(diagram, path):
    r"""
    Draws a one parameter bifurcation diagram as a point cloud. Returns the
    path, or ``None`` without matplotlib.
    """
    fig, ax = _new_figure()
    if fig is None:
        return None
    for v, samples in zip(diagram.sweep_values, diagram.samples):
        if len(samples):
            ax.plot(np.full(len(samples), v), samples, ",k", alpha=.25)
    ax.set_xlim(float(diagram.sweep_values[0]), float(diagram.sweep_values[-1]))
    ax.set_xlabel(_axis_label(diagram.parameter))
    ax.set_ylabel(f"${diagram.projection}$")
    return _save(fig, path)
