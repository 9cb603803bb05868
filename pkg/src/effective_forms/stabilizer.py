"""Stabilizer subalgebras of effective forms inside sp(6), their first
prolongations, and Killing-form identification data.

The stabilizer of a form w is {X in sp(V) : L_X w = 0}, computed as an
exact nullspace over the rationals.  The first prolongation is
(V (x) S^2 V*) intersect (J (x) V*), whose vanishing is the rigidity input
for the local-equivalence jet conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from . import rational_linalg as rl
from .exterior import DimensionError, KForm, LinearMap, lie_derivative_linear
from .symplectic import omega_matrix


# -- sp(6) ----------------------------------------------------------------


def sp_basis(n=3) -> List[LinearMap]:
    """Standard basis of sp(2n): block matrices [[A, B], [C, -A^T]] with
    A arbitrary and B, C symmetric; 21 elements for n = 3."""
    basis = []
    z = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]

    def mk(entries):
        m = [row[:] for row in z]
        for (i, j), v in entries.items():
            m[i][j] = Fraction(v)
        return LinearMap(m)

    for i in range(n):
        for j in range(n):
            basis.append(mk({(i, j): 1, (n + j, n + i): -1}))
    for i in range(n):
        for j in range(i, n):
            basis.append(mk({(i, n + j): 1, (j, n + i): 1}))
    for i in range(n):
        for j in range(i, n):
            basis.append(mk({(n + i, j): 1, (n + j, i): 1}))
    return basis


def in_sp(x: LinearMap, n=3) -> bool:
    j = omega_matrix(n)
    xt = rl.transpose([list(r) for r in x.rows])
    lhs = rl.mat_add(rl.mat_mul(xt, j), rl.mat_mul(j, [list(r) for r in x.rows]))
    return all(all(v == 0 for v in row) for row in lhs)


# -- subalgebras ----------------------------------------------------------


@dataclass
class Subalgebra:
    basis: List[LinearMap]
    structure_constants: Optional[List[List[List[Fraction]]]] = None

    @property
    def dim(self):
        return len(self.basis)


def _flatten(m: LinearMap):
    return [v for row in m.rows for v in row]


def _canonical_basis(mats: List[LinearMap]) -> List[LinearMap]:
    """Reduced echelon basis over the row-major flattening order."""
    if not mats:
        return []
    dim = mats[0].dim
    rows = [_flatten(m) for m in mats]
    red, pivots = rl.rref(rows)
    out = []
    for r, p in zip(red, pivots):
        out.append(LinearMap([r[i * dim : (i + 1) * dim] for i in range(dim)]))
    return out


def _expand_in_basis(x: LinearMap, basis: List[LinearMap]):
    """Coefficients of x over the basis, or None when outside the span."""
    cols = [_flatten(b) for b in basis]
    a = [[cols[k][r] for k in range(len(basis))] for r in range(len(cols[0]))]
    return rl.solve(a, _flatten(x))


def bracket(x: LinearMap, y: LinearMap) -> LinearMap:
    xy = x.compose(y)
    yx = y.compose(x)
    return LinearMap(
        [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(xy.rows, yx.rows)],
        x.rational,
    )


def structure_constants(basis: List[LinearMap]):
    """c[i][j][k] with [X_i, X_j] = sum_k c[i][j][k] X_k; raises if the span
    is not closed under the bracket."""
    d = len(basis)
    c = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            coeffs = _expand_in_basis(bracket(basis[i], basis[j]), basis)
            if coeffs is None:
                raise ArithmeticError("basis does not span a Lie subalgebra")
            for k in range(d):
                c[i][j][k] = coeffs[k]
                c[j][i][k] = -coeffs[k]
    return c


def stabilizer(w: KForm) -> Subalgebra:
    """Exact nullspace of X -> L_X w over sp(dim/2), canonical basis."""
    if not w.rational:
        raise DimensionError("stabilizer requires a rational-mode form")
    n = w.dim // 2
    sp = sp_basis(n)
    rows_basis = list(combinations(range(1, w.dim + 1), w.degree))
    row_index = {idx: r for r, idx in enumerate(rows_basis)}
    a = [[Fraction(0)] * len(sp) for _ in rows_basis]
    for k, x in enumerate(sp):
        lw = lie_derivative_linear(x, w)
        for idx, cval in lw.coeffs.items():
            a[row_index[idx]][k] += cval
    mats = []
    for coeffs in rl.nullspace(a):
        m = [[Fraction(0)] * w.dim for _ in range(w.dim)]
        for ck, x in zip(coeffs, sp):
            if ck:
                for i in range(w.dim):
                    for j in range(w.dim):
                        m[i][j] += ck * x.rows[i][j]
        mats.append(LinearMap(m))
    basis = _canonical_basis(mats)
    sub = Subalgebra(basis)
    sub.structure_constants = structure_constants(basis) if basis else []
    return sub


def conjugate_subalgebra(sub: Subalgebra, f: LinearMap) -> Subalgebra:
    """F^{-1} J F, canonical basis."""
    finv = LinearMap(rl.inverse([list(r) for r in f.rows]))
    mats = [finv.compose(x).compose(f) for x in sub.basis]
    return Subalgebra(_canonical_basis(mats))


# -- Killing form ---------------------------------------------------------


def killing_matrix(sub: Subalgebra):
    c = sub.structure_constants
    if c is None:
        c = structure_constants(sub.basis)
    d = sub.dim
    k = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            k[i][j] = sum(c[i][a][b] * c[j][b][a] for a in range(d) for b in range(d))
    return k


def killing_report(sub: Subalgebra) -> Tuple[Tuple[int, int, int], int]:
    """(Sylvester signature of the Killing form, radical-kernel dimension).

    Zero kernel means the algebra is semisimple; the signature separates
    split, compact and pseudo-unitary real forms of equal dimension.
    """
    if sub.dim == 0:
        return (0, 0, 0), 0
    k = killing_matrix(sub)
    sig = rl.sym_signature(k)
    return sig, sub.dim - rl.rank(k)


# -- first prolongation ---------------------------------------------------


@dataclass
class Prolongation:
    dim: int
    basis: List[List[LinearMap]]  # element = [T(u_1), ..., T(u_6)], each in J


def prolongation(sub: Subalgebra) -> Prolongation:
    """(V (x) S^2 V*) intersect (J (x) V*): linear maps T: V -> J with
    T(u)v = T(v)u, computed as an exact nullspace in the unknowns writing
    T(u_i) over the subalgebra basis."""
    if not sub.basis:
        return Prolongation(0, [])
    dim = sub.basis[0].dim
    g = sub.dim
    for x in sub.basis:
        if not in_sp(x, dim // 2):
            raise DimensionError("subalgebra basis is not inside sp")
    # unknowns c[m][i]: T(u_i) = sum_m c[m][i] X_m; constraints for i < j:
    # sum_m c[m][i] (X_m u_j) - c[m][j] (X_m u_i) = 0 componentwise
    ncols = g * dim
    rows = []
    for i in range(dim):
        for j in range(i + 1, dim):
            for comp in range(dim):
                row = [Fraction(0)] * ncols
                for m in range(g):
                    row[m * dim + i] += sub.basis[m].rows[comp][j]
                    row[m * dim + j] -= sub.basis[m].rows[comp][i]
                rows.append(row)
    sols = rl.nullspace(rows)
    basis = []
    for sol in sols:
        element = []
        for i in range(dim):
            m = [[Fraction(0)] * dim for _ in range(dim)]
            for mm in range(g):
                cmi = sol[mm * dim + i]
                if cmi:
                    for r in range(dim):
                        for cc in range(dim):
                            m[r][cc] += cmi * sub.basis[mm].rows[r][cc]
            element.append(LinearMap(m))
        basis.append(element)
    return Prolongation(len(sols), basis)


# -- quadratic Hamiltonians ----------------------------------------------


def quadratic_to_hamiltonian(h: Dict[Tuple[int, int], object], n=3) -> LinearMap:
    """Linear Hamiltonian field of the quadratic h = sum h[(i,j)] x_i x_j
    (1-based monomial keys, i <= j) under i_{X_h} Omega = dh: A = 2 J Q."""
    dim = 2 * n
    q = [[Fraction(0)] * dim for _ in range(dim)]
    for (i, j), v in h.items():
        if not (1 <= i <= j <= dim):
            raise DimensionError(f"bad monomial key {(i, j)}")
        half = Fraction(v) / 2 if i != j else Fraction(v)
        q[i - 1][j - 1] += half if i != j else Fraction(v)
        if i != j:
            q[j - 1][i - 1] += half
    a = rl.mat_scale(rl.mat_mul(omega_matrix(n), q), Fraction(2))
    return LinearMap(a)


def hamiltonian_to_quadratic(a: LinearMap) -> Dict[Tuple[int, int], Fraction]:
    """Inverse of quadratic_to_hamiltonian: Q = -(1/2) J A, read as monomials."""
    n = a.dim // 2
    if not in_sp(a, n):
        raise DimensionError("matrix is not in sp")
    q = rl.mat_scale(
        rl.mat_mul(omega_matrix(n), [list(r) for r in a.rows]), Fraction(-1, 2)
    )
    h = {}
    for i in range(a.dim):
        for j in range(i, a.dim):
            v = q[i][j] if i == j else q[i][j] + q[j][i]
            if v:
                h[(i + 1, j + 1)] = v
    return h
