"""Hilbert series of ideals of generic forms over large prime fields."""

from .engine import (
    JobSpec,
    Mode,
    compare_powers,
    hilbert_series,
    sweep,
    verify_conjecture,
)
from .series import IntSeries, conjectured_series, expand_quotient, truncate_positive

__version__ = "0.1.0"

__all__ = [
    "IntSeries",
    "JobSpec",
    "Mode",
    "compare_powers",
    "conjectured_series",
    "expand_quotient",
    "hilbert_series",
    "sweep",
    "truncate_positive",
    "verify_conjecture",
]
