"""Scalar and quadratic invariants of effective forms.

The master invariant for 3-forms on R^6 is the quadratic form
q_w(X) = -(1/4) bot^2 (i_X w)^2; its rank/signature/determinant drive the
orbit classification.  In dimension 4 the corresponding invariant for
2-forms is the Pfaffian, w^w = Pf(w) Omega^Omega.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import rational_linalg as rl
from .exterior import DimensionError, KForm, Vector, interior, wedge
from .symplectic import bot, half_dim, is_effective, omega_form


@dataclass(frozen=True)
class QuadForm:
    """Symmetric matrix Q with q(X) = X^T Q X.

    Convention for reading symmetric-product expressions: a table entry
    (x_i)^2 contributes Q[i][i] = 1 and an entry x_i x_j (i != j)
    contributes Q[i][j] = Q[j][i] = 1 (full weight on both slots; the
    factor 2 of the polarization is absorbed into the cross terms).  This
    is the convention under which q_form reproduces the classification
    table's invariant column exactly; it was pinned down by recomputing
    q on every normal form.
    """

    matrix: tuple  # tuple of row tuples

    @classmethod
    def from_rows(cls, rows):
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def from_sym_product(cls, dim, entries):
        """Build from {(i, j): coef} meaning sum coef * x_i x_j, 1-based i <= j."""
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        for (i, j), c in entries.items():
            c = Fraction(c)
            if i == j:
                rows[i - 1][i - 1] += c
            else:
                rows[i - 1][j - 1] += c
                rows[j - 1][i - 1] += c
        return cls.from_rows(rows)

    @property
    def dim(self):
        return len(self.matrix)

    def evaluate(self, x: Vector):
        rows = self.matrix
        return sum(
            rows[i][j] * x.entries[i] * x.entries[j]
            for i in range(self.dim)
            for j in range(self.dim)
        )

    def bilinear(self, x: Vector, y: Vector):
        rows = self.matrix
        return sum(
            rows[i][j] * x.entries[i] * y.entries[j]
            for i in range(self.dim)
            for j in range(self.dim)
        )

    def is_zero(self):
        return all(all(v == 0 for v in row) for row in self.matrix)

    def scale(self, c):
        return QuadForm.from_rows([[c * v for v in row] for row in self.matrix])


@dataclass(frozen=True)
class CubicPoly:
    """c3 L^3 + c2 L^2 + c1 L + c0."""

    c3: object
    c2: object
    c1: object
    c0: object

    def evaluate(self, x):
        return ((self.c3 * x + self.c2) * x + self.c1) * x + self.c0

    def coefficients(self):
        return (self.c3, self.c2, self.c1, self.c0)


@dataclass(frozen=True)
class QuadReport:
    rank: int
    signature: tuple  # (positive, negative, zero)
    det: object


def pfaffian(w: KForm):
    """Unique scalar with w^w = Pf(w) * Omega^Omega, on R^4."""
    if w.dim != 4 or w.degree != 2:
        raise DimensionError("pfaffian expects a 2-form on R^4")
    omega2 = wedge(omega_form(2, w.rational), omega_form(2, w.rational))
    top_idx = (1, 2, 3, 4)
    return wedge(w, w).coefficient(top_idx) / omega2.coefficient(top_idx)


def pfaffian_wrt(w: KForm, reference: KForm):
    """Pfaffian of w with respect to an arbitrary nondegenerate 2-form on R^4."""
    ref2 = wedge(reference, reference).coefficient((1, 2, 3, 4))
    if ref2 == 0:
        raise ValueError("reference 2-form is degenerate")
    return wedge(w, w).coefficient((1, 2, 3, 4)) / ref2


def _q_value(w: KForm, x: Vector):
    wx = interior(x, w)
    val = bot(bot(wedge(wx, wx)))
    c = val.coefficient(())
    quarter = Fraction(-1, 4) if w.rational else -0.25
    return quarter * c


def q_form(w: KForm, check_effective=True) -> QuadForm:
    """The quadratic form q_w of an effective 3-form on R^6, polarized."""
    if w.dim != 6 or w.degree != 3:
        raise DimensionError("q_form expects a 3-form on R^6")
    if check_effective and w.rational and not is_effective(w):
        raise ValueError("q_form is defined for effective forms only")
    basis = [Vector.basis(6, i, w.rational) for i in range(1, 7)]
    diag = [_q_value(w, b) for b in basis]
    two = Fraction(2) if w.rational else 2.0
    rows = [[None] * 6 for _ in range(6)]
    for i in range(6):
        rows[i][i] = diag[i]
    for i in range(6):
        for j in range(i + 1, 6):
            val = (_q_value(w, basis[i] + basis[j]) - diag[i] - diag[j]) / two
            rows[i][j] = rows[j][i] = val
    return QuadForm.from_rows(rows)


def char_poly(w: KForm, x: Vector) -> CubicPoly:
    """P(L) = (i_X w - L*Omega)^3 / Omega^3, an exact cubic in L.

    Its root set is {0, +sqrt(q_w(X)), -sqrt(q_w(X))} up to the overall
    factor -1 coming from the (-L Omega)^3 term.
    """
    if w.dim != 6 or w.degree != 3:
        raise DimensionError("char_poly expects a 3-form on R^6")
    om = omega_form(3, w.rational)
    wx = interior(x, w)
    top_idx = (1, 2, 3, 4, 5, 6)
    om3 = wedge(om, wedge(om, om)).coefficient(top_idx)
    # (wx - L om)^3 expanded in powers of L
    c0 = wedge(wx, wedge(wx, wx)).coefficient(top_idx) / om3
    c1 = -3 * wedge(wx, wedge(wx, om)).coefficient(top_idx) / om3
    c2 = 3 * wedge(wx, wedge(om, om)).coefficient(top_idx) / om3
    c3 = -1 * om3 / om3
    return CubicPoly(c3, c2, c1, c0)


def q_report(q: QuadForm) -> QuadReport:
    rows = [list(r) for r in q.matrix]
    rational = all(isinstance(v, (Fraction, int)) for row in rows for v in row)
    if rational:
        rows = [[Fraction(v) for v in row] for row in rows]
        sig = rl.sym_signature(rows)
        return QuadReport(rank=sig[0] + sig[1], signature=sig, det=rl.det(rows))
    import numpy as np

    a = np.array(rows, dtype=float)
    eigs = np.linalg.eigvalsh(a)
    tol = 1e-9 * max(1.0, float(np.max(np.abs(eigs))))
    pos = int((eigs > tol).sum())
    neg = int((eigs < -tol).sum())
    zero = len(eigs) - pos - neg
    return QuadReport(rank=pos + neg, signature=(pos, neg, zero), det=float(np.linalg.det(a)))
