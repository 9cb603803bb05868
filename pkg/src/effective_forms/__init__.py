"""Exact symplectic classification of effective 3-forms on R^6."""

__version__ = "1.0.0"

from .classify import OrbitLabel, classify, reduce
from .exterior import KForm, LinearMap, Vector, interior, pullback, wedge
from .invariants import char_poly, pfaffian, q_form, q_report
from .normal_forms import all_representatives, representative
from .symplectic import (
    bot,
    effective_decompose,
    effective_dimension,
    is_effective,
    omega_form,
    top,
)

__all__ = [
    "KForm",
    "LinearMap",
    "OrbitLabel",
    "Vector",
    "all_representatives",
    "bot",
    "char_poly",
    "classify",
    "effective_decompose",
    "effective_dimension",
    "interior",
    "is_effective",
    "omega_form",
    "pfaffian",
    "pullback",
    "q_form",
    "q_report",
    "reduce",
    "representative",
    "top",
    "wedge",
]
