r"""
Command line front end: ``wqa <command> [flags]``.

Exit codes: 0 on success, 2 on configuration or output errors, 3 when a
numeric precondition of the requested computation fails.

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

import argparse
import csv
import logging
import sys

import numpy as np

from . import render
from .classifier import basin_grid, lyapunov_max
from .config import COMMANDS, RunConfig
from .errors import ConfigError, NongenericMapError, PreconditionError
from .invariantsets import degenerate_set_at, segment_set_at, trace_boundary_curve
from .pwlmap import Point2, iterate_orbit
from .scanner import overlay_boundaries, scan_1d, scan_2d
from .symbolicsequence import composite_matrix, eigen2

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_FLAGS = (
    ("--params", "delta_L,delta_R,tau_L,tau_R"),
    ("--window", "x0,x1,y0,y1 of the phase plane window"),
    ("--res", "NX,NY grid resolution"),
    ("--out", "output path prefix"),
    ("--palette", "scan palette id"),
    ("--threads", "worker count (default: all cores)"),
    ("--seeds", "seed strategy: default, dense or single"),
    ("--axis1", "first scan axis, name:lo:hi:samples"),
    ("--axis2", "second scan axis, name:lo:hi:samples"),
    ("--max-iter", "iterations per trajectory"),
    ("--transient", "iterations discarded before convergence tests"),
    ("--escape-radius", "norm beyond which a trajectory diverges"),
    ("--origin-tolerance", "distance to O counted as convergence"),
    ("--family", "boundary family, e.g. B_LRn1"),
    ("--n", "period of the boundary family"),
    ("--families", "comma separated KIND:n overlays"),
    ("--sweep", "swept parameter, name:lo:hi"),
    ("--solve", "solved parameter, name:lo:hi"),
    ("--steps", "sweep samples or orbit length"),
    ("--projection", "x or y"),
    ("--n-tail", "recorded samples per attractor"),
    ("--continuation", "true to seed each sweep value from the previous one"),
    ("--seed", "x,y initial point"),
    ("--sigma", "symbolic sequence, e.g. LR^4"),
    ("--lyapunov-steps", "steps of the Lyapunov estimate"),
)

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    for flag, text in _FLAGS:
        common.add_argument(flag, dest=flag[2:].replace("-", "_"), default=None, help=text)
    common.add_argument("-v", "--verbose", action="store_const", const="true", default=None,
                        help="log at DEBUG level")

    parser = argparse.ArgumentParser(prog="wqa", description="Bifurcation analysis of a discontinuous "
                                     "piecewise linear homogeneous map of the plane.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser

def load_config(argv=None):
    r"""
    Parses ``argv`` and returns the RunConfig with the flags layered over the
    configuration file.
    """
    args = build_parser().parse_args(argv)
    flags = RunConfig.from_args(args)
    if args.config is not None:
        return RunConfig.from_file(args.config).merged(flags)
    return flags

def _write_rows(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows(rows)
    return path

def cmd_scan2d(cfg):
    spec = cfg.scan_spec()
    cfg.require("axis2")
    grid = scan_2d(spec, n_jobs=cfg.thread_count(), verbose=bool(cfg.verbose))
    written = [cfg.output_path(".wqas", "scan2d"), cfg.output_path(".csv", "scan2d")]
    grid.write(written[0])
    grid.to_csv(written[1])
    written.append(render.write_image(render.scan_rgb(grid, cfg.palette or "default"),
                                      cfg.output_path(".png", "scan2d")))
    if cfg.families:
        overlay_boundaries(grid, cfg.families, steps=cfg.steps, n_jobs=cfg.thread_count(),
                           verbose=bool(cfg.verbose))
        for curve in grid.overlays:
            path = cfg.output_path(f"_{curve.family.kind.value}_{curve.family.n}.csv", "scan2d")
            curve.to_csv(path)
            written.append(path)
        written.append(render.plot_scan(grid, cfg.output_path("_overlay.png", "scan2d"), cfg.palette or "default"))
    return written

def cmd_scan1d(cfg):
    spec = cfg.scan_spec()
    if spec.axis2 is not None:
        raise ConfigError("scan1d takes a single axis; drop axis2.")
    diagram = scan_1d(spec, projection=cfg.projection or "x", n_tail=cfg.n_tail or 1000,
                      continuation=bool(cfg.continuation), n_jobs=cfg.thread_count(),
                      verbose=bool(cfg.verbose))
    written = [cfg.output_path(".csv", "scan1d")]
    diagram.to_csv(written[0])
    written.append(render.plot_bifurcation(diagram, cfg.output_path(".png", "scan1d")))
    return written

def _phase_grid(cfg):
    cfg.require("params", "window")
    return basin_grid(cfg.params, cfg.window, cfg.res or (400, 400), cfg.classify_options(),
                      n_jobs=cfg.thread_count(), verbose=bool(cfg.verbose))

def _overlay_sets(cfg):
    r"""
    Segment sets and eigenlines drawn on a phase portrait: the set of
    ``sigma`` when it is admissible, else the eigenlines of `J_sigma`
    through `O`, and the degenerate set of `O` when there is one.
    """
    sets, lines = [], []
    if cfg.sigma is not None:
        try:
            sets.append(segment_set_at(cfg.params, cfg.sigma, tol=1e-6))
        except PreconditionError:
            eig = eigen2(composite_matrix(cfg.params, cfg.sigma))
            lines = [((0.0, 0.0), s) for s in (eig.slope1, eig.slope2) if s is not None]
    try:
        sets.append(degenerate_set_at(cfg.params, tol=1e-9))
    except PreconditionError:
        pass
    return sets, lines

def cmd_phase(cfg):
    grid = _phase_grid(cfg)
    cloud = [fp.cell_centers() for fp in grid.fingerprints]
    cloud = np.concatenate(cloud) if cloud else None
    sets, lines = _overlay_sets(cfg)
    written = [cfg.output_path(".csv", "phase")]
    grid.to_csv(written[0])
    written.append(render.plot_phase(grid, cfg.output_path(".png", "phase"), cloud, sets, lines))
    return written

def cmd_basin(cfg):
    grid = _phase_grid(cfg)
    written = [cfg.output_path(".csv", "basin")]
    grid.to_csv(written[0])
    written.append(render.write_image(render.phase_rgb(grid), cfg.output_path(".png", "basin")))
    return written

def cmd_boundary(cfg):
    cfg.require("params", "sweep", "solve")
    family = cfg.boundary_family()
    (sweep_axis, s0, s1), (solve_axis, v0, v1) = cfg.sweep, cfg.solve
    if sweep_axis is solve_axis:
        raise ConfigError(f"sweep and solve must name different parameters, got {sweep_axis.value} twice.")
    curve = trace_boundary_curve(family, cfg.params, sweep_axis, solve_axis, (s0, s1), (v0, v1),
                                 steps=cfg.steps or 200, n_jobs=cfg.thread_count(), verbose=bool(cfg.verbose))
    path = cfg.output_path(".csv", "boundary")
    curve.to_csv(path)
    return [path]

def cmd_orbit(cfg):
    cfg.require("params")
    seed = cfg.seed or Point2(0.0, 0.0)
    orbit = iterate_orbit(cfg.params, seed, cfg.steps or 1000,
                          cfg.escape_radius if cfg.escape_radius is not None else 1e8)
    path = _write_rows(cfg.output_path(".csv", "orbit"), ["k", "x", "y", "partition"],
                       ([k, repr(p.x), repr(p.y), label.value]
                        for k, (p, label) in enumerate(zip(orbit.points, orbit.itinerary))))
    word = orbit.itinerary_word()
    print(word)
    if orbit.escaped():
        logger.info("orbit escaped at step %d", orbit.escaped_at)
    return [path]

def cmd_lyapunov(cfg):
    cfg.require("params")
    seed = cfg.seed or Point2(0.0, 0.0)
    n_steps = cfg.lyapunov_steps or 1_000_000
    transient = cfg.transient if cfg.transient is not None else 10_000
    value = lyapunov_max(cfg.params, seed, n_steps, transient,
                         cfg.escape_radius if cfg.escape_radius is not None else 1e8)
    logger.info("largest Lyapunov exponent estimate %.6g", value)
    path = _write_rows(cfg.output_path(".csv", "lyapunov"),
                       ["delta_L", "delta_R", "tau_L", "tau_R", "x0", "y0", "n_steps", "transient", "lyapunov"],
                       [[*(repr(v) for v in cfg.params.as_tuple()), repr(seed.x), repr(seed.y),
                         n_steps, transient, repr(value)]])
    return [path]

def cmd_segments(cfg):
    cfg.require("params")
    if cfg.sigma is not None:
        segments = segment_set_at(cfg.params, cfg.sigma, tol=1e-6)
    else:
        segments = degenerate_set_at(cfg.params, tol=1e-9)
    logger.info("%s: %d segments, layout %s, periodicity error %.3g", segments.sigma, len(segments),
                segments.layout(), segments.periodicity_error(cfg.params))
    path = _write_rows(cfg.output_path(".csv", "segments"),
                       ["index", "partition", "w_x", "w_y", "t_lo", "t_hi"],
                       ([s.index, s.label.value, repr(s.w[0]), repr(s.w[1]), repr(s.t_lo), repr(s.t_hi)]
                        for s in segments))
    return [path]

COMMAND_TABLE = {
    "scan2d": cmd_scan2d,
    "scan1d": cmd_scan1d,
    "phase": cmd_phase,
    "basin": cmd_basin,
    "boundary": cmd_boundary,
    "orbit": cmd_orbit,
    "lyapunov": cmd_lyapunov,
    "segments": cmd_segments,
}

def run(cfg):
    r"""
    Dispatches ``cfg`` to its command and returns the written paths.
    """
    if cfg.command is None:
        raise ConfigError("no command given.")
    try:
        return [p for p in COMMAND_TABLE[cfg.command](cfg) if p is not None]
    except OSError as e:
        raise ConfigError(f"cannot write {e.filename}: {e.strerror}.") from None

def main(argv=None):
    try:
        cfg = load_config(argv)
    except ConfigError as e:
        logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
        logger.error("%s", e)
        return EXIT_CONFIG
    logging.basicConfig(level=logging.DEBUG if cfg.verbose else logging.INFO, format=LOG_FORMAT)
    try:
        for path in run(cfg):
            logger.info("wrote %s", path)
    except ConfigError as e:
        logger.error("%s", e)
        return EXIT_CONFIG
    except (PreconditionError, NongenericMapError) as e:
        logger.error("%s", e)
        return EXIT_PRECONDITION
    return EXIT_OK

if __name__ == "__main__":
    sys.exit(main())
