"""The nine orbit representatives of effective 3-forms on R^6.

Coordinates: x1..x3 are e1*..e3*, x4..x6 are f1*..f3*.  Families 1-3 carry
a positive parameter (gamma for family 1, nu for families 2 and 3).
"""

from __future__ import annotations

from fractions import Fraction

from .exterior import KForm

PARAMETRIC_FAMILIES = (1, 2, 3)


def representative(family: int, parameter=None, rational=True) -> KForm:
    if family in PARAMETRIC_FAMILIES:
        if parameter is None:
            raise ValueError(f"family {family} needs a parameter")
        p = Fraction(parameter) if rational else float(parameter)
        if p <= 0:
            raise ValueError("parameter must be positive")
    elif parameter is not None:
        raise ValueError(f"family {family} takes no parameter")

    if family == 1:
        coeffs = {(1, 2, 3): 1, (4, 5, 6): p}
    elif family == 2:
        # f1^e2^e3 + f2^e1^e3 + f3^e1^e2 + nu^2 f1^f2^f3
        coeffs = {(2, 3, 4): 1, (1, 3, 5): 1, (1, 2, 6): 1, (4, 5, 6): p * p}
    elif family == 3:
        coeffs = {(2, 3, 4): 1, (1, 3, 5): -1, (1, 2, 6): 1, (4, 5, 6): -p * p}
    elif family == 4:
        coeffs = {(2, 3, 4): 1, (1, 3, 5): 1, (1, 2, 6): 1}
    elif family == 5:
        coeffs = {(2, 3, 4): 1, (1, 3, 5): -1, (1, 2, 6): 1}
    elif family == 6:
        coeffs = {(1, 2, 6): 1, (1, 3, 5): 1}
    elif family == 7:
        coeffs = {(1, 2, 6): 1, (1, 3, 5): -1}
    elif family == 8:
        coeffs = {(1, 2, 3): 1}
    elif family == 9:
        coeffs = {}
    else:
        raise ValueError(f"unknown family {family}")
    return KForm(6, 3, coeffs, rational)


def all_representatives(parameter=1):
    """One representative per family, families 1-3 at the given parameter."""
    out = []
    for fam in range(1, 10):
        p = parameter if fam in PARAMETRIC_FAMILIES else None
        out.append((fam, p, representative(fam, p)))
    return out
