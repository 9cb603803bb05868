"""Polynomial-coefficient differential forms on R^6 with the Cartan
operations (exterior derivative, interior product, Lie derivative along
polynomial vector fields), exact over the rationals.

Polynomials are sparse dicts keyed by exponent tuples; forms carry one
polynomial per strictly increasing index tuple, mirroring KForm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Tuple

from .exterior import DimensionError, KForm, _merge_sorted

ExpTuple = Tuple[int, ...]


class Poly:
    """Sparse polynomial over Q in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[ExpTuple, Fraction] = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(e)] = clean.get(tuple(e), Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        e = (0,) * nvars
        return cls(nvars, {e: Fraction(c)})

    @classmethod
    def variable(cls, nvars, i):
        e = tuple(1 if j == i else 0 for j in range(1, nvars + 1))
        return cls(nvars, {e: Fraction(1)})

    @classmethod
    def monomial(cls, nvars, exps, c=1):
        return cls(nvars, {tuple(exps): Fraction(c)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Poly(self.nvars, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return Poly(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Poly(self.nvars, out)

    def diff(self, i: int) -> "Poly":
        """Partial derivative with respect to variable i (1-based)."""
        out = {}
        for e, c in self.terms.items():
            k = e[i - 1]
            if k:
                e2 = tuple(v - 1 if j == i - 1 else v for j, v in enumerate(e))
                out[e2] = out.get(e2, Fraction(0)) + c * k
        return Poly(self.nvars, out)

    def evaluate(self, point):
        total = Fraction(0) if all(isinstance(p, (int, Fraction)) for p in point) else 0.0
        for e, c in self.terms.items():
            term = c if isinstance(total, Fraction) else float(c)
            for x, k in zip(point, e):
                for _ in range(k):
                    term = term * x
            total = total + term
        return total

    def degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def homogeneous_part(self, d):
        return Poly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __repr__(self):
        return f"Poly({self.terms})"


def monomial_basis(nvars: int, degree: int) -> List[ExpTuple]:
    """All exponent tuples of the given total degree, in a fixed order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


class PolyKForm:
    """k-form with polynomial coefficients; keys are strictly increasing
    1-based index tuples as in KForm."""

    __slots__ = ("dim", "degree", "coeffs")

    def __init__(self, dim: int, degree: int, coeffs: Dict[Tuple[int, ...], Poly] = None):
        self.dim = dim
        self.degree = degree
        clean = {}
        for idx, p in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(
                not 1 <= v <= dim for v in idx
            ) or list(idx) != sorted(set(idx)):
                raise DimensionError(f"bad index tuple {idx}")
            if not p.is_zero():
                clean[idx] = clean.get(idx, Poly.zero(dim)) + p
        self.coeffs = {k: v for k, v in clean.items() if not v.is_zero()}

    @classmethod
    def zero(cls, dim, degree):
        return cls(dim, degree)

    @classmethod
    def from_constant(cls, w: KForm):
        if not w.rational:
            raise DimensionError("expected a rational-mode form")
        return cls(
            w.dim, w.degree, {idx: Poly.constant(w.dim, c) for idx, c in w.coeffs.items()}
        )

    def constant_part(self) -> KForm:
        zero_e = (0,) * self.dim
        return KForm(
            self.dim,
            self.degree,
            {idx: p.terms.get(zero_e, Fraction(0)) for idx, p in self.coeffs.items()},
        )

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if (self.dim, self.degree) != (other.dim, other.degree):
            raise DimensionError("degree mismatch")
        out = dict(self.coeffs)
        for idx, p in other.coeffs.items():
            out[idx] = out.get(idx, Poly.zero(self.dim)) + p
        return PolyKForm(self.dim, self.degree, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return PolyKForm(
            self.dim, self.degree, {idx: p.scale(c) for idx, p in self.coeffs.items()}
        )

    def homogeneous_part(self, d):
        return PolyKForm(
            self.dim,
            self.degree,
            {idx: p.homogeneous_part(d) for idx, p in self.coeffs.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, PolyKForm)
            and (self.dim, self.degree) == (other.dim, other.degree)
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"PolyKForm(degree={self.degree}, {self.coeffs})"


def d(form: PolyKForm) -> PolyKForm:
    """Exterior derivative."""
    out = {}
    for idx, p in form.coeffs.items():
        for i in range(1, form.dim + 1):
            dp = p.diff(i)
            if dp.is_zero():
                continue
            res = _merge_sorted((i,), idx)
            if res is None:
                continue
            sign, merged = res
            out[merged] = out.get(merged, Poly.zero(form.dim)) + dp.scale(sign)
    return PolyKForm(form.dim, form.degree + 1, out)


@dataclass
class PolyVectorField:
    """Vector field with polynomial components."""

    components: List[Poly]

    @property
    def dim(self):
        return len(self.components)


def interior_poly(x: PolyVectorField, form: PolyKForm) -> PolyKForm:
    if form.degree == 0:
        return PolyKForm.zero(form.dim, 0)
    out = {}
    for idx, p in form.coeffs.items():
        for pos, i in enumerate(idx):
            comp = x.components[i - 1]
            if comp.is_zero():
                continue
            rest = idx[:pos] + idx[pos + 1 :]
            sign = -1 if pos % 2 else 1
            contrib = (comp * p).scale(sign)
            out[rest] = out.get(rest, Poly.zero(form.dim)) + contrib
    return PolyKForm(form.dim, form.degree - 1, out)


def lie_poly(x: PolyVectorField, form: PolyKForm) -> PolyKForm:
    """Cartan formula L_X = d i_X + i_X d."""
    return d(interior_poly(x, form)) + interior_poly(x, d(form))


def hamiltonian_field_poly(h: Poly, n: int = 3) -> PolyVectorField:
    """X_h with i_{X_h} Omega = dh for Omega = sum dx_i ^ dx_{n+i}:
    X = (d_{n+1}h, ..., d_{2n}h, -d_1 h, ..., -d_n h)."""
    if h.nvars != 2 * n:
        raise DimensionError("polynomial has the wrong number of variables")
    comps = [h.diff(n + i) for i in range(1, n + 1)]
    comps += [h.diff(i).scale(-1) for i in range(1, n + 1)]
    return PolyVectorField(comps)
