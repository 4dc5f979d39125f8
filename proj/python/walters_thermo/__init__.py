"""Pressure, eigenfunction, Gibbs cylinders and zero-temperature limits for Walters-class potentials."""

import json

from ._core import (
    NumericalError,
    Potential,
    ValidationError,
    WaltersError,
    beta_max,
    builtin_names,
    compute_A,
    cylinder_log,
    gibbs,
    h_values,
    oracle,
    pressure,
)
from . import _core


def select_measure(f):
    return json.loads(_core.select_measure(f))


def limit_report(f, q_cap=10, t_grid=(), words=()):
    return json.loads(_core.limit_report(f, q_cap, list(t_grid), list(words)))


def load(path):
    with open(path) as fh:
        return Potential.from_json(fh.read())


__all__ = [
    "NumericalError",
    "Potential",
    "ValidationError",
    "WaltersError",
    "beta_max",
    "builtin_names",
    "compute_A",
    "cylinder_log",
    "gibbs",
    "h_values",
    "limit_report",
    "load",
    "oracle",
    "pressure",
    "select_measure",
]
