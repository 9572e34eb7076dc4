"""Exact Betti numbers of unordered configuration spaces of surfaces."""

from .core import BettiTable, Kind, ProvenanceConflict, Surface, ext_binom, trinomial
from .engine import (
    Bounds,
    FittedPolynomial,
    K_series,
    Report,
    V_series,
    betti,
    betti_table,
    consistency_check,
    master_series,
    polynomial_fit,
    resolve,
)
from .series import TruncatedSeries, coefficient

__all__ = [
    "BettiTable", "Bounds", "FittedPolynomial", "K_series", "Kind", "ProvenanceConflict",
    "Report", "Surface", "TruncatedSeries", "V_series", "betti", "betti_table",
    "coefficient", "consistency_check", "ext_binom", "master_series", "polynomial_fit",
    "resolve", "trinomial",
]

__version__ = "0.1.0"
