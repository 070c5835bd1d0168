r"""
Run configuration of the command line front end.

A configuration file is UTF-8 text with one ``key = value`` per line; ``#``
starts a comment and blank lines are ignored. Every key is mirrored by a
command line flag, and flags override the file.

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
from dataclasses import dataclass, fields, replace
from typing import Optional

from .classifier import ClassifyOptions
from .errors import ConfigError, PreconditionError
from .invariantsets import BoundaryFamily
from .pwlmap import MapParams, ParameterId, Point2
from .scanner import ScanAxis, ScanSpec
from .symbolicsequence import SymbolicSequence

logger = logging.getLogger(__name__)

COMMANDS = ("scan2d", "scan1d", "phase", "basin", "boundary", "orbit", "lyapunov", "segments")

def _floats(count):
    def parse(text):
        values = [float(v) for v in str(text).split(",")]
        if len(values) != count:
            raise ValueError(f"expected {count} comma separated numbers")
        return tuple(values)
    return parse

def _ints(count):
    def parse(text):
        values = [int(v) for v in str(text).split(",")]
        if len(values) != count or min(values) < 1:
            raise ValueError(f"expected {count} comma separated positive integers")
        return tuple(values)
    return parse

def _nonzero_int(text):
    value = int(text)
    if value == 0:
        raise ValueError("expected a nonzero worker count")
    return value

def _range(text):
    r'''``"name:lo:hi"`` to ``(ParameterId, lo, hi)``.'''
    name, lo, hi = str(text).split(":")
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise ValueError("expected lo < hi")
    return (ParameterId.parse(name), lo, hi)

def _bool(text):
    if isinstance(text, bool):
        return text
    key = str(text).strip().lower()
    if key in ("1", "true", "yes", "on"):
        return True
    if key in ("0", "false", "no", "off"):
        return False
    raise ValueError("expected true or false")

def _command(text):
    if text not in COMMANDS:
        raise ValueError(f"expected one of {', '.join(COMMANDS)}")
    return text

def _families(text):
    return tuple(BoundaryFamily.parse(item) for item in str(text).split(",") if item.strip())

def _point(text):
    return Point2(*_floats(2)(text))

_PARSERS = {
    "command": _command,
    "params": MapParams.parse,
    "window": _floats(4),
    "res": _ints(2),
    "out": str,
    "palette": str,
    "threads": _nonzero_int,
    "seeds": str,
    "axis1": ScanAxis.parse,
    "axis2": ScanAxis.parse,
    "max_iter": int,
    "transient": int,
    "escape_radius": float,
    "origin_tolerance": float,
    "family": str,
    "n": int,
    "families": _families,
    "sweep": _range,
    "solve": _range,
    "steps": int,
    "projection": str,
    "n_tail": int,
    "continuation": _bool,
    "seed": _point,
    "sigma": SymbolicSequence,
    "lyapunov_steps": int,
    "verbose": _bool,
}

def _format(key, value):
    if key == "params":
        return ",".join(repr(v) for v in value.as_tuple())
    if key in ("window", "res"):
        return ",".join(repr(v) for v in value)
    if key in ("axis1", "axis2"):
        return f"{value.parameter.value}:{value.lo!r}:{value.hi!r}:{value.samples}"
    if key in ("sweep", "solve"):
        return f"{value[0].value}:{value[1]!r}:{value[2]!r}"
    if key == "families":
        return ",".join(str(f) for f in value)
    if key == "seed":
        return f"{value.x!r},{value.y!r}"
    if key == "sigma":
        return value.word
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)

def parse_value(key, text):
    r"""
    Converts the text of ``key`` to its value. Raises ConfigError naming the
    key on unknown keys and unreadable values.
    """
    if key not in _PARSERS:
        raise ConfigError(f"unknown configuration key {key!r}.")
    try:
        return _PARSERS[key](text)
    except (ValueError, TypeError, PreconditionError) as e:
        raise ConfigError(f"invalid value {text!r} for {key}: {e}") from None

@dataclass(frozen=True)
class RunConfig:
    r"""
    Parsed configuration of one run. Unset keys are ``None``; the accessors
    apply the defaults.

    EXAMPLES::

        >>> cfg = RunConfig.from_text("command = orbit\nparams = 0.9,0.7,-2,1.16\nseed = 0.5,0.5")
        >>> cfg.params.tau_R
        1.16
    """
    command: Optional[str] = None
    params: Optional[MapParams] = None
    window: Optional[tuple] = None
    res: Optional[tuple] = None
    out: Optional[str] = None
    palette: Optional[str] = None
    threads: Optional[int] = None
    seeds: Optional[str] = None
    axis1: Optional[ScanAxis] = None
    axis2: Optional[ScanAxis] = None
    max_iter: Optional[int] = None
    transient: Optional[int] = None
    escape_radius: Optional[float] = None
    origin_tolerance: Optional[float] = None
    family: Optional[str] = None
    n: Optional[int] = None
    families: Optional[tuple] = None
    sweep: Optional[tuple] = None
    solve: Optional[tuple] = None
    steps: Optional[int] = None
    projection: Optional[str] = None
    n_tail: Optional[int] = None
    continuation: Optional[bool] = None
    seed: Optional[Point2] = None
    sigma: Optional[SymbolicSequence] = None
    lyapunov_steps: Optional[int] = None
    verbose: Optional[bool] = None

    @classmethod
    def keys(cls):
        return [f.name for f in fields(cls)]

    @classmethod
    def from_text(cls, text, source="<text>"):
        values = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"{source}:{number}: expected 'key = value', got {raw.strip()!r}.")
            key = key.strip()
            if key in values:
                raise ConfigError(f"{source}:{number}: duplicate key {key!r}.")
            values[key] = parse_value(key, value.strip())
        return cls(**values)

    @classmethod
    def from_file(cls, path):
        try:
            with open(path, encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            raise ConfigError(f"cannot read configuration {path}: {e.strerror}.") from None
        return cls.from_text(text, source=str(path))

    @classmethod
    def from_args(cls, namespace):
        r"""
        Builds a configuration from an argparse namespace whose attributes
        named like the keys hold raw strings or ``None``.
        """
        values = {}
        for key in cls.keys():
            raw = getattr(namespace, key, None)
            if raw is not None:
                values[key] = parse_value(key, raw)
        return cls(**values)

    def merged(self, override):
        r'''Returns this configuration with the keys set in ``override`` replaced.'''
        changes = {k: getattr(override, k) for k in self.keys() if getattr(override, k) is not None}
        return replace(self, **changes)

    def to_dict(self):
        r'''The set keys as text, in the file format.'''
        return {k: _format(k, getattr(self, k)) for k in self.keys() if getattr(self, k) is not None}

    @classmethod
    def from_dict(cls, data):
        return cls(**{k: parse_value(k, v) for k, v in data.items()})

    def to_text(self):
        return "".join(f"{k} = {v}\n" for k, v in self.to_dict().items())

    def require(self, *keys):
        missing = [k for k in keys if getattr(self, k) is None]
        if missing:
            raise ConfigError(f"{self.command or 'this command'} needs {', '.join(missing)}.")

    def thread_count(self):
        return self.threads if self.threads is not None else (os.cpu_count() or 1)

    def classify_options(self):
        r'''ClassifyOptions with the set keys overriding the defaults.'''
        changes = {k: getattr(self, k) for k in ("max_iter", "transient", "escape_radius", "origin_tolerance")
                   if getattr(self, k) is not None}
        defaults = ClassifyOptions()
        try:
            return defaults.replace(**changes)
        except ConfigError as e:
            raise ConfigError(f"invalid classification options: {e}") from None

    def scan_spec(self):
        r'''The ScanSpec of a scan command; ``axis2`` is only required by ``scan2d``.'''
        self.require("params", "axis1")
        return ScanSpec(self.axis1, self.axis2, self.params, self.seeds or "default", self.classify_options())

    def boundary_family(self):
        self.require("family")
        try:
            return BoundaryFamily(self.family, self.n)
        except ValueError as e:
            raise ConfigError(str(e)) from None

    def output_path(self, suffix, default_stem):
        r"""
        Returns ``out`` (or ``default_stem``) with ``suffix`` appended;
        raises ConfigError if the directory does not exist.
        """
        stem = self.out or default_stem
        directory = os.path.dirname(os.path.abspath(stem))
        if not os.path.isdir(directory):
            raise ConfigError(f"output directory {directory} does not exist.")
        return stem + suffix
