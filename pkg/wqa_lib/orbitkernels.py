r"""
Compiled inner loops for iterating `F`.

The kernels take the four parameters as scalars and are compiled in nopython
mode with ``nogil`` so that joblib thread workers run them concurrently. When
numba is not installed the same functions run as plain Python.

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

try:
    from numba import njit
    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is optional at import time
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f

STATUS_BOUNDED = 0
STATUS_CONVERGED = 1
STATUS_DIVERGED = 2

@njit(cache=True, nogil=True)
def map_step(dl, dr, tl, tr, x, y):
    if x < -1.0:
        return tl*x + y, -dl*x
    return tr*x + y, -dr*x

@njit(cache=True, nogil=True)
def run_orbit(dl, dr, tl, tr, x, y, max_iter, transient, escape_radius, origin_tol, origin_attracting):
    r"""
    Iterates ``max_iter`` times and returns ``(status, x, y, iterations)``.

    The run stops early on escape, when the orbit reaches `O` exactly, or,
    if `O` is attracting, when an iterate past ``transient`` is within
    ``origin_tol`` of `O`.
    """
    r2 = escape_radius*escape_radius
    t2 = origin_tol*origin_tol
    if not (x*x + y*y <= r2):
        return STATUS_DIVERGED, x, y, 0
    for k in range(max_iter):
        x, y = map_step(dl, dr, tl, tr, x, y)
        d2 = x*x + y*y
        if not (d2 <= r2):
            return STATUS_DIVERGED, x, y, k + 1
        if x == 0.0 and y == 0.0:
            return STATUS_CONVERGED, x, y, k + 1
        if origin_attracting and k + 1 >= transient and d2 < t2:
            return STATUS_CONVERGED, x, y, k + 1
    if x*x + y*y < t2:
        return STATUS_CONVERGED, x, y, max_iter
    return STATUS_BOUNDED, x, y, max_iter

@njit(cache=True, nogil=True)
def tail_bbox(dl, dr, tl, tr, x, y, n, escape_radius):
    r"""
    Returns ``(xmin, xmax, ymin, ymax, escaped)`` over ``n`` iterates
    following ``(x, y)``.
    """
    xmin, xmax, ymin, ymax = x, x, y, y
    r2 = escape_radius*escape_radius
    for _ in range(n):
        x, y = map_step(dl, dr, tl, tr, x, y)
        if not (x*x + y*y <= r2):
            return xmin, xmax, ymin, ymax, True
        xmin = min(xmin, x)
        xmax = max(xmax, x)
        ymin = min(ymin, y)
        ymax = max(ymax, y)
    return xmin, xmax, ymin, ymax, False

@njit(cache=True, nogil=True)
def cell_index(v, lo, hi, res):
    r"""
    Returns the cell of ``v`` among ``res`` cells of ``[lo, hi]``: ``-1``
    below the window or for NaN, ``res`` above it.
    """
    if not v >= lo:
        return -1
    if v > hi:
        return res
    return min(int(math.floor((v - lo)/(hi - lo)*res)), res - 1)

@njit(cache=True, nogil=True)
def rasterize_tail(dl, dr, tl, tr, x, y, n, x0, x1, y0, y1, occupancy):
    r"""
    Marks in ``occupancy[iy, ix]`` the cells visited by ``n`` iterates
    following ``(x, y)`` and returns the number of iterates inside the
    window.
    """
    ny, nx = occupancy.shape
    inside = 0
    for _ in range(n):
        x, y = map_step(dl, dr, tl, tr, x, y)
        ix = cell_index(x, x0, x1, nx)
        iy = cell_index(y, y0, y1, ny)
        if 0 <= ix < nx and 0 <= iy < ny:
            occupancy[iy, ix] = 1
            inside += 1
    return inside

@njit(cache=True, nogil=True)
def count_hits(dl, dr, tl, tr, x, y, n, x0, x1, y0, y1, occupancy, escape_radius):
    r"""
    Returns how many of ``n`` iterates following ``(x, y)`` fall in an
    occupied cell or one of its eight neighbours. Iterates after an escape
    from the disk of radius ``escape_radius`` count as misses.
    """
    ny, nx = occupancy.shape
    r2 = escape_radius*escape_radius
    hits = 0
    for _ in range(n):
        x, y = map_step(dl, dr, tl, tr, x, y)
        if not (x*x + y*y <= r2):
            break
        ix = cell_index(x, x0, x1, nx)
        iy = cell_index(y, y0, y1, ny)
        if not (0 <= ix < nx and 0 <= iy < ny):
            continue
        found = False
        for jy in range(max(iy - 1, 0), min(iy + 2, ny)):
            for jx in range(max(ix - 1, 0), min(ix + 2, nx)):
                if occupancy[jy, jx]:
                    found = True
        if found:
            hits += 1
    return hits

@njit(cache=True, nogil=True)
def lyapunov_kernel(dl, dr, tl, tr, x, y, n_steps, transient, escape_radius):
    r"""
    Returns ``(estimate, escaped)``: the mean logarithmic growth of a
    renormalized tangent vector over ``n_steps`` steps after ``transient``.
    """
    r2 = escape_radius*escape_radius
    for _ in range(transient):
        x, y = map_step(dl, dr, tl, tr, x, y)
        if not (x*x + y*y <= r2):
            return 0.0, True
    vx, vy = 1.0, 0.0
    total = 0.0
    for _ in range(n_steps):
        if x < -1.0:
            tau, delta = tl, dl
        else:
            tau, delta = tr, dr
        vx, vy = tau*vx + vy, -delta*vx
        norm = math.sqrt(vx*vx + vy*vy)
        if norm == 0.0:
            return -math.inf, False
        total += math.log(norm)
        vx /= norm
        vy /= norm
        x, y = map_step(dl, dr, tl, tr, x, y)
        if not (x*x + y*y <= r2):
            return total/n_steps, True
    return total/n_steps, False

@njit(cache=True, nogil=True)
def tail_samples(dl, dr, tl, tr, x, y, projection, escape_radius, out):
    r"""
    Writes the chosen coordinate (0 for `x`, 1 for `y`) of the iterates
    following ``(x, y)`` into ``out`` and returns the number written, which
    is short of ``len(out)`` only on escape.
    """
    r2 = escape_radius*escape_radius
    for k in range(out.shape[0]):
        x, y = map_step(dl, dr, tl, tr, x, y)
        if not (x*x + y*y <= r2):
            return k
        out[k] = x if projection == 0 else y
    return out.shape[0]

@njit(cache=True, nogil=True)
def tail_points(dl, dr, tl, tr, x, y, escape_radius, out):
    r"""
    Writes the iterates following ``(x, y)`` into the rows of ``out`` (shape
    ``(n, 2)``) and returns the number written.
    """
    r2 = escape_radius*escape_radius
    for k in range(out.shape[0]):
        x, y = map_step(dl, dr, tl, tr, x, y)
        if not (x*x + y*y <= r2):
            return k
        out[k, 0] = x
        out[k, 1] = y
    return out.shape[0]
