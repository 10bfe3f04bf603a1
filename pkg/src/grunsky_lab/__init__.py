"""Grunsky-coefficient toolkit for coefficient functionals of univalent functions."""

from .series import BivariateSeries, TruncatedSeries, compose, revert
from .grunsky import (
    GrunskyTable,
    check_coefficient_relations,
    grunsky_table,
    inequality_check,
    odd_grunsky_table,
)
from .functionals import FunctionalReport, functional_report, hankel, inverse_coeffs, log_coeffs
from .catalog import NamedFunction, enumerate_catalog

__version__ = "0.1.0"

__all__ = [
    "BivariateSeries",
    "FunctionalReport",
    "GrunskyTable",
    "NamedFunction",
    "TruncatedSeries",
    "check_coefficient_relations",
    "compose",
    "enumerate_catalog",
    "functional_report",
    "grunsky_table",
    "hankel",
    "inequality_check",
    "inverse_coeffs",
    "log_coeffs",
    "odd_grunsky_table",
    "revert",
]
