"""Exact probabilistic zeta functions of finite groups and their products."""
from .dseries import (
    DirichletSeries,
    coefficient_bound_check,
    first_negative,
    invert,
    make_series,
    mul,
    ordered_factorizations,
    unit,
)

__version__ = "0.1.0"
