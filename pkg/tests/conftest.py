import random
from fractions import Fraction
from itertools import combinations

from effective_forms.exterior import KForm


def random_form(rng: random.Random, dim: int, degree: int, bound: int = 3) -> KForm:
    coeffs = {}
    for idx in combinations(range(1, dim + 1), degree):
        val = rng.randint(-bound, bound)
        if val:
            coeffs[idx] = Fraction(val)
    return KForm(dim, degree, coeffs)
