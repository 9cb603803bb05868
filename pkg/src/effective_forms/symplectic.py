"""Symplectic structure on R^{2n}: the operators top/bot, effectiveness,
the Hodge-Lepage decomposition, and the recursive split of an effective
n-form along a chosen hyperbolic pair (A, B).

Basis convention: (e_1..e_n, f_1..f_n) with Omega(e_i, f_j) = delta_ij,
i.e. Omega = sum_i x_i ^ x_{n+i} in dual coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import rational_linalg as rl
from .exterior import DimensionError, KForm, LinearMap, Vector, interior, pullback, wedge


def half_dim(w: KForm) -> int:
    if w.dim % 2:
        raise DimensionError("ambient dimension must be even")
    return w.dim // 2


def omega_form(n: int, rational=True) -> KForm:
    one = 1 if rational else 1.0
    return KForm(2 * n, 2, {(i, n + i): one for i in range(1, n + 1)}, rational)


def omega_matrix(n: int, rational=True):
    """Matrix J of Omega: Omega(X, Y) = X^T J Y."""
    one = Fraction(1) if rational else 1.0
    j = [[one * 0 for _ in range(2 * n)] for _ in range(2 * n)]
    for i in range(n):
        j[i][n + i] = one
        j[n + i][i] = -one
    return j


def omega_eval(x: Vector, y: Vector):
    n = x.dim // 2
    return sum(
        x.entries[i] * y.entries[n + i] - x.entries[n + i] * y.entries[i]
        for i in range(n)
    )


def gamma(x: Vector) -> KForm:
    """Gamma(X) = Omega(X, .): Gamma(e_i) = f_i*, Gamma(f_i) = -e_i*."""
    n = x.dim // 2
    coeffs = {}
    for i in range(n):
        if x.entries[i] != 0:
            coeffs[(n + i + 1,)] = x.entries[i]
        if x.entries[n + i] != 0:
            coeffs[(i + 1,)] = -x.entries[n + i]
    return KForm(x.dim, 1, coeffs, x.rational)


def gamma_inv(a: KForm) -> Vector:
    if a.degree != 1:
        raise DimensionError("gamma_inv expects a 1-form")
    n = a.dim // 2
    entries = [0] * a.dim
    for (i,), c in a.coeffs.items():
        if i <= n:
            entries[n + i - 1] = -c
        else:
            entries[i - n - 1] = c
    return Vector(entries, a.rational)


def top(w: KForm) -> KForm:
    n = half_dim(w)
    return wedge(w, omega_form(n, w.rational))


def bot(w: KForm) -> KForm:
    """Interior product with X_Omega = sum e_i ^ f_i, with the convention
    i_{X^Y} = i_Y o i_X."""
    n = half_dim(w)
    if w.degree < 2:
        return KForm.zero(w.dim, 0, w.rational)
    out = KForm.zero(w.dim, w.degree - 2, w.rational)
    for i in range(1, n + 1):
        e_i = Vector.basis(w.dim, i, w.rational)
        f_i = Vector.basis(w.dim, n + i, w.rational)
        out = out + interior(f_i, interior(e_i, w))
    return out


def is_effective(w: KForm) -> bool:
    n = half_dim(w)
    eff = bot(w).is_zero()
    if w.degree == n:
        # cross-check via the degree-n criterion w ^ Omega = 0
        assert eff == top(w).is_zero()
    return eff


@dataclass(frozen=True)
class EffectiveDecomposition:
    """w = sum_i top^i(components[i]) with every component effective."""

    components: tuple

    def reassemble(self) -> KForm:
        out = None
        for i, c in enumerate(self.components):
            piece = c
            for _ in range(i):
                piece = top(piece)
            out = piece if out is None else out + piece
    # degree bookkeeping: top^i raises degree by 2i, all pieces end equal
        return out


def _degree_basis(dim, k):
    return list(combinations(range(1, dim + 1), k))


def effective_decompose(w: KForm) -> EffectiveDecomposition:
    """Hodge-Lepage components of w, by one exact global linear solve."""
    n = half_dim(w)
    k = w.degree
    if k > n:
        raise DimensionError("decomposition implemented for degree <= n only")
    degrees = []
    d = k
    while d >= 0:
        degrees.append(d)
        d -= 2
    # unknowns: coefficients of omega_i in Lambda^{k-2i}
    blocks = [_degree_basis(w.dim, d) for d in degrees]
    offsets = [0]
    for b in blocks:
        offsets.append(offsets[-1] + len(b))
    ncols = offsets[-1]

    target_basis = _degree_basis(w.dim, k)
    row_index = {idx: r for r, idx in enumerate(target_basis)}
    rows = len(target_basis)

    eq_rows = []
    rhs = []
    zero = Fraction(0)
    # reassembly equations
    sys_rows = [[zero] * ncols for _ in range(rows)]
    for bi, basis in enumerate(blocks):
        for ci, idx in enumerate(basis):
            piece = KForm.basis(w.dim, idx)
            for _ in range(bi):
                piece = top(piece)
            for tidx, val in piece.coeffs.items():
                sys_rows[row_index[tidx]][offsets[bi] + ci] += val
    for r, tidx in enumerate(target_basis):
        eq_rows.append(sys_rows[r])
        rhs.append(Fraction(w.coefficient(tidx)) if w.rational else w.coefficient(tidx))
    # effectiveness equations: bot(omega_i) = 0
    for bi, basis in enumerate(blocks):
        d = degrees[bi]
        if d < 2:
            continue
        low_basis = _degree_basis(w.dim, d - 2)
        low_index = {idx: r for r, idx in enumerate(low_basis)}
        block_rows = [[zero] * ncols for _ in range(len(low_basis))]
        for ci, idx in enumerate(basis):
            bp = bot(KForm.basis(w.dim, idx))
            for lidx, val in bp.coeffs.items():
                block_rows[low_index[lidx]][offsets[bi] + ci] += val
        for row in block_rows:
            eq_rows.append(row)
            rhs.append(zero)

    if w.rational:
        sol = rl.solve(eq_rows, rhs)
    else:
        import numpy as np

        a = np.array([[float(x) for x in row] for row in eq_rows])
        b = np.array([float(x) for x in rhs])
        sol, *_ = np.linalg.lstsq(a, b, rcond=None)
        sol = list(sol)
    if sol is None:
        raise ArithmeticError("Hodge-Lepage system unexpectedly inconsistent")
    comps = []
    for bi, basis in enumerate(blocks):
        coeffs = {idx: sol[offsets[bi] + ci] for ci, idx in enumerate(basis)}
        comps.append(KForm(w.dim, degrees[bi], coeffs, w.rational))
    return EffectiveDecomposition(tuple(comps))


def effective_dimension(dim: int, k: int) -> int:
    """dim of the space of effective k-forms, as the nullity of bot."""
    basis = _degree_basis(dim, k)
    if k < 2:
        return len(basis)
    low_basis = _degree_basis(dim, k - 2)
    low_index = {idx: r for r, idx in enumerate(low_basis)}
    m = [[Fraction(0)] * len(basis) for _ in range(len(low_basis))]
    for ci, idx in enumerate(basis):
        for lidx, val in bot(KForm.basis(dim, idx)).coeffs.items():
            m[low_index[lidx]][ci] += val
    return len(basis) - rl.rank(m)


# -- recursive split ------------------------------------------------------


def symplectic_complement_basis(a: Vector, b: Vector):
    """Exact basis of the Omega-skew-orthogonal complement of span(A, B)."""
    rows = [
        [Fraction(x) for x in gamma_coeff_row(a)],
        [Fraction(x) for x in gamma_coeff_row(b)],
    ]
    return [Vector(v) for v in rl.nullspace(rows)]


def gamma_coeff_row(x: Vector):
    """Row of coefficients of Gamma(X) on (x_1..x_dim)."""
    g = gamma(x)
    return [g.coefficient((i,)) for i in range(1, x.dim + 1)]


def symplectic_gram_schmidt(vectors):
    """Turn a basis of a symplectic subspace into a symplectic basis
    (E_1..E_m, F_1..F_m) with Omega(E_i, F_j) = delta_ij."""
    pool = list(vectors)
    es, fs = [], []
    while pool:
        u = pool.pop(0)
        if u.is_zero():
            continue
        partner = None
        for i, v in enumerate(pool):
            val = omega_eval(u, v)
            if val != 0:
                partner = pool.pop(i).scale(Fraction(1) / val if u.rational else 1.0 / val)
                break
        if partner is None:
            raise ArithmeticError("subspace is not symplectic")
        es.append(u)
        fs.append(partner)
        pool = [
            v + u.scale(-omega_eval(v, partner)) + partner.scale(omega_eval(v, u))
            for v in pool
        ]
        # v' = v - Omega(v,F)E - Omega(E,v)F is skew-orthogonal to span(E,F)
    return es, fs


@dataclass(frozen=True)
class SplitFrame:
    """Adapted symplectic basis (A, E'_1.., B, F'_1..) used by a split."""

    basis: LinearMap  # columns are the adapted basis vectors
    n: int

    def basis_inverse(self) -> LinearMap:
        if self.basis.rational:
            inv = rl.inverse([list(r) for r in self.basis.rows])
        else:
            import numpy as np

            inv = np.linalg.inv([[float(x) for x in r] for r in self.basis.rows]).tolist()
        return LinearMap(inv, self.basis.rational)


@dataclass(frozen=True)
class RecursiveSplit:
    """w = w0 ^ (a^b - Omega') + w1 ^ a + w2 ^ b on W = span(A,B)^perp."""

    omega0: KForm
    omega1: KForm
    omega2: KForm
    frame: SplitFrame

    def reassemble(self) -> KForm:
        n = self.frame.n
        dim = 2 * n
        rational = self.omega0.rational
        a = KForm.basis(dim, (n + 1,), rational)  # Gamma(A) in adapted coords
        b = KForm.basis(dim, (1,), rational).scale(-1)  # Gamma(B)
        omega_prime = KForm(
            dim, 2, {(i, n + i): 1 for i in range(2, n + 1)}, rational
        )
        w0, w1, w2 = (
            _lift_w_form(f, n) for f in (self.omega0, self.omega1, self.omega2)
        )
        w_new = (
            wedge(w0, wedge(a, b) - omega_prime) + wedge(w1, a) + wedge(w2, b)
        )
        return pullback(self.frame.basis_inverse(), w_new)


def _w_index_map(n):
    """Adapted-basis index (over 2..n, n+2..2n) -> W index in 1..2(n-1)."""
    mapping = {}
    for i in range(2, n + 1):
        mapping[i] = i - 1
    for i in range(n + 2, 2 * n + 1):
        mapping[i] = i - 2
    return mapping


def _lift_w_form(w: KForm, n: int) -> KForm:
    """Reinterpret a form on W (dim 2(n-1)) inside the adapted coordinates."""
    inv = {v: k for k, v in _w_index_map(n).items()}
    coeffs = {tuple(sorted(inv[i] for i in idx)): c for idx, c in w.coeffs.items()}
    return KForm(2 * n, w.degree, coeffs, w.rational)


def _project_w_form(coeffs, n, degree, rational):
    mapping = _w_index_map(n)
    out = {tuple(sorted(mapping[i] for i in idx)): c for idx, c in coeffs.items()}
    return KForm(2 * (n - 1), degree, out, rational)


def recursive_split(w: KForm, a_vec: Vector, b_vec: Vector) -> RecursiveSplit:
    """Split an effective n-form along a pair with Omega(A, B) = 1."""
    n = half_dim(w)
    if w.degree != n:
        raise DimensionError("recursive_split expects a degree-n form")
    if omega_eval(a_vec, b_vec) != 1:
        raise ValueError("Omega(A, B) must equal 1")
    if not is_effective(w):
        raise ValueError("form is not effective")

    wbasis = symplectic_complement_basis(a_vec, b_vec)
    es, fs = symplectic_gram_schmidt(wbasis)
    cols = [a_vec] + es + [b_vec] + fs
    basis = LinearMap(
        [[cols[j].entries[i] for j in range(2 * n)] for i in range(2 * n)],
        w.rational,
    )
    w_new = pullback(basis, w)

    parts = {key: {} for key in ("ab", "a", "b", "rest")}
    for idx, c in w_new.coeffs.items():
        has1 = 1 in idx
        hasn1 = (n + 1) in idx
        if has1 and hasn1:
            rest = tuple(i for i in idx if i not in (1, n + 1))
            pos = idx.index(n + 1) - 1  # position of n+1 after removing leading 1
            sign = -1 if pos % 2 else 1
            parts["ab"][rest] = sign * c
        elif hasn1:
            pos = idx.index(n + 1)
            rest = tuple(i for i in idx if i != n + 1)
            sign = (-1 if pos % 2 else 1) * (-1 if (n - 1) % 2 else 1)
            parts["a"][rest] = sign * c
        elif has1:
            rest = idx[1:]
            sign = -1 if (n - 1) % 2 else 1
            parts["b"][rest] = -sign * c
        else:
            parts["rest"][idx] = c

    omega0 = _project_w_form(parts["ab"], n, n - 2, w.rational)
    omega1 = _project_w_form(parts["a"], n, n - 1, w.rational)
    omega2 = _project_w_form(parts["b"], n, n - 1, w.rational)
    omega3 = _project_w_form(parts["rest"], n, n, w.rational)

    split = RecursiveSplit(omega0, omega1, omega2, SplitFrame(basis, n))
    if w.rational:
        prime_n = n - 1
        omega_prime = omega_form(prime_n, w.rational)
        assert omega3 == wedge(omega0, omega_prime).scale(-1), "omega3 != -top'(omega0)"
        assert split.reassemble() == w, "recursive split reassembly failed"
    return split
