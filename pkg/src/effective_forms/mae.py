"""Monge-Ampere bridge: render a constant-coefficient effective 3-form on
T*R^3 as a second-order PDE in the Hessian of an unknown function, and
check the second-jet flatness conditions for local equivalence to a
constant-coefficient model.

Coordinates: q1..q3 base, q4..q6 fiber; the graph of grad(h) has tangent
frame T_i = e_i + sum_j h_ij f_j, and the PDE is the coefficient of
dq1^dq2^dq3 in the pullback of the form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from . import rational_linalg as rl
from .classify import OrbitLabel, classify
from .exterior import DimensionError, KForm
from .jets import (
    Poly,
    PolyKForm,
    PolyVectorField,
    hamiltonian_field_poly,
    lie_poly,
    monomial_basis,
)
from .symplectic import is_effective

# Hessian entry order used by HessPoly: h11, h12, h13, h22, h23, h33
HESS_VARS = ((1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3))
_HESS_INDEX = {p: i + 1 for i, p in enumerate(HESS_VARS)}


def _hess_var(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return _HESS_INDEX[(i, j)]


@dataclass
class HessPoly:
    """Polynomial in the six entries of a symmetric 3x3 Hessian."""

    poly: Poly  # 6 variables, order HESS_VARS

    def evaluate(self, hessian) -> object:
        """Evaluate at a symmetric 3x3 matrix (list of rows)."""
        point = [hessian[i - 1][j - 1] for (i, j) in HESS_VARS]
        return self.poly.evaluate(point)

    def __add__(self, other):
        return HessPoly(self.poly + other.poly)

    def scale(self, c):
        return HessPoly(self.poly.scale(c))

    def __eq__(self, other):
        return isinstance(other, HessPoly) and self.poly == other.poly

    def __repr__(self):
        names = ["h11", "h12", "h13", "h22", "h23", "h33"]
        parts = []
        for e, c in sorted(self.poly.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}"
                for i, k in enumerate(e)
                if k
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"


def hess_det() -> HessPoly:
    """det of the symmetric Hessian as a HessPoly."""
    v = lambda i, j: Poly.variable(6, _hess_var(i, j))
    det = Poly.zero(6)
    import itertools

    for perm in itertools.permutations((1, 2, 3)):
        sign = 1
        p = list(perm)
        for a in range(3):
            for b in range(a + 1, 3):
                if p[a] > p[b]:
                    sign = -sign
        term = v(1, perm[0]) * v(2, perm[1]) * v(3, perm[2])
        det = det + term.scale(sign)
    return HessPoly(det)


def laplacian() -> HessPoly:
    p = Poly.zero(6)
    for i in (1, 2, 3):
        p = p + Poly.variable(6, _hess_var(i, i))
    return HessPoly(p)


def pde_from_form(w: KForm) -> HessPoly:
    """w evaluated on the graph frame (T1, T2, T3), T_i = e_i + sum_j h_ij f_j."""
    if w.dim != 6 or w.degree != 3:
        raise DimensionError("expected a 3-form on R^6")
    if not is_effective(w):
        raise ValueError("form is not effective")
    # frame vector components as HessPoly entries
    frame = []
    for i in (1, 2, 3):
        comps = [Poly.zero(6)] * 6
        comps = list(comps)
        comps[i - 1] = Poly.constant(6, 1)
        for j in (1, 2, 3):
            comps[3 + j - 1] = Poly.variable(6, _hess_var(i, j))
        frame.append(comps)
    total = Poly.zero(6)
    for idx, c in w.coeffs.items():
        # 3x3 determinant of frame components at the index triple
        det = Poly.zero(6)
        import itertools

        for perm, sign in (
            ((0, 1, 2), 1),
            ((1, 2, 0), 1),
            ((2, 0, 1), 1),
            ((0, 2, 1), -1),
            ((1, 0, 2), -1),
            ((2, 1, 0), -1),
        ):
            term = (
                frame[perm[0]][idx[0] - 1]
                * frame[perm[1]][idx[1] - 1]
                * frame[perm[2]][idx[2] - 1]
            )
            det = det + term.scale(sign)
        total = total + det.scale(c)
    return HessPoly(total)


def eval_mae(w: KForm, hessian) -> object:
    return pde_from_form(w).evaluate(hessian)


def canonical_pdes(parameter=1) -> List[HessPoly]:
    """The five constant-coefficient model equations, generated from the
    first five table representatives; family 1 is normalized so the
    constant term reads lambda = 1/gamma."""
    from .normal_forms import representative

    out = []
    for fam in (1, 2, 3, 4, 5):
        p = parameter if fam in (1, 2, 3) else None
        hp = pde_from_form(representative(fam, p))
        if fam == 1:
            hp = hp.scale(Fraction(1, 1) / Fraction(parameter))
        out.append(hp)
    return out


# -- jets and flatness ---------------------------------------------------


@dataclass
class JetForm:
    """Second-order jet of a 3-form at a point: graded pieces of the
    coefficient polynomials in the centered base coordinates."""

    omega0: KForm  # constant part
    omega1: PolyKForm  # linear part
    omega2: PolyKForm  # quadratic part

    def __post_init__(self):
        if self.omega1.is_zero():
            self.omega1 = PolyKForm.zero(6, 3)
        if self.omega2.is_zero():
            self.omega2 = PolyKForm.zero(6, 3)
        for d_expect, part in ((1, self.omega1), (2, self.omega2)):
            for p in part.coeffs.values():
                if any(sum(e) != d_expect for e in p.terms):
                    raise DimensionError(
                        f"graded piece of degree {d_expect} has mixed terms"
                    )

    @classmethod
    def from_polyform(cls, form: PolyKForm):
        return cls(
            form.homogeneous_part(0).constant_part(),
            form.homogeneous_part(1),
            form.homogeneous_part(2),
        )


@dataclass
class FlatnessReport:
    orbit_at_base: OrbitLabel
    sigma1_solvable: bool
    sigma1_certificate: Optional[Poly]
    sigma2_solvable: bool
    sigma2_certificate: Optional[Poly]
    kernel_independent: Optional[bool]
    conclusion: bool


def _flatten_polyform(form: PolyKForm, monomials: List[Tuple[int, ...]]):
    """Coefficient vector over (3-index tuples) x monomials."""
    idx_list = list(combinations(range(1, 7), 3))
    vec = []
    for idx in idx_list:
        p = form.coeffs.get(idx, Poly.zero(6))
        for e in monomials:
            vec.append(p.terms.get(e, Fraction(0)))
    return vec


def _lie_action_matrix(omega0_pf: PolyKForm, gen_degree: int):
    """Columns: h runs over the monomial basis of S^gen_degree; rows flatten
    L_{X_h} omega0 over monomials of degree gen_degree - 2."""
    gens = monomial_basis(6, gen_degree)
    out_monos = monomial_basis(6, gen_degree - 2)
    cols = []
    for e in gens:
        xh = hamiltonian_field_poly(Poly.monomial(6, e))
        cols.append(_flatten_polyform(lie_poly(xh, omega0_pf), out_monos))
    matrix = [[cols[c][r] for c in range(len(cols))] for r in range(len(cols[0]))]
    return gens, out_monos, matrix


def _solve_lie_equation(omega0_pf: PolyKForm, rhs: PolyKForm, gen_degree: int):
    """Solve L_{X_h} omega0 = rhs for h homogeneous of gen_degree; returns
    (solution Poly or None, kernel basis as Polys)."""
    gens, out_monos, matrix = _lie_action_matrix(omega0_pf, gen_degree)
    b = _flatten_polyform(rhs, out_monos)
    sol = rl.solve(matrix, b)
    kernel = [
        Poly(6, {e: c for e, c in zip(gens, v)}) for v in rl.nullspace(matrix)
    ]
    if sol is None:
        return None, kernel
    return Poly(6, {e: c for e, c in zip(gens, sol)}), kernel


def check_jet_conditions(jf: JetForm) -> FlatnessReport:
    """Flatness-to-second-order test: solve for a cubic h with
    L_{X_h} omega0 = omega1, then a quartic k with
    L_{X_k} omega0 = 2 omega2 - L_{X_h} omega1."""
    label = classify(jf.omega0)
    omega0_pf = PolyKForm.from_constant(jf.omega0)
    h, kernel = _solve_lie_equation(omega0_pf, jf.omega1, 3)
    if h is None:
        return FlatnessReport(label, False, None, False, None, None, False)
    xh = hamiltonian_field_poly(h)
    rhs2 = jf.omega2.scale(2) - lie_poly(xh, jf.omega1)
    k, _ = _solve_lie_equation(omega0_pf, rhs2, 4)
    kernel_independent = None
    if kernel:
        h2 = h + kernel[0]
        rhs2b = jf.omega2.scale(2) - lie_poly(hamiltonian_field_poly(h2), jf.omega1)
        k2, _ = _solve_lie_equation(omega0_pf, rhs2b, 4)
        kernel_independent = (k is None) == (k2 is None)
    conclusion = (
        k is not None and label.family in (1, 2, 3, 4, 5) and kernel_independent is not False
    )
    return FlatnessReport(
        label, True, h, k is not None, k, kernel_independent, conclusion
    )


def forward_jet(omega0: KForm, h: Poly, k: Poly) -> JetForm:
    """Jet with omega1 = L_{X_h} omega0 and
    omega2 = (L_{X_h} omega1 + L_{X_k} omega0) / 2, for testing."""
    pf0 = PolyKForm.from_constant(omega0)
    xh = hamiltonian_field_poly(h)
    omega1 = lie_poly(xh, pf0)
    omega2 = (lie_poly(xh, omega1) + lie_poly(hamiltonian_field_poly(k), pf0)).scale(
        Fraction(1, 2)
    )
    return JetForm(omega0, omega1, omega2)
