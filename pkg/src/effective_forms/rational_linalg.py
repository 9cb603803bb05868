"""Exact linear algebra over the rationals.

Matrices are lists of row lists of Fraction (or anything supporting exact
field arithmetic, e.g. float for the numerical fast paths).  Everything here
is small and dense; the largest systems in this project are a few hundred
rows, so plain fraction-free-ish Gaussian elimination is plenty.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list  # list[list[Fraction]]


def zeros(rows, cols):
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def mat_copy(m):
    return [row[:] for row in m]


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(m, v):
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(m, c):
    return [[c * x for x in row] for row in m]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def rref(m):
    """Reduced row echelon form. Returns (rref_matrix, pivot_columns)."""
    m = mat_copy(m)
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(m):
    return len(rref(m)[1])


def nullspace(m):
    """Basis of the right nullspace, as a list of column vectors."""
    if not m:
        return []
    cols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(m, b):
    """One solution x of m x = b, or None if inconsistent."""
    if not m:
        return [] if all(x == 0 for x in b) else None
    cols = len(m[0])
    aug = [row[:] + [bv] for row, bv in zip(m, b)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def det(m):
    m = mat_copy(m)
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        inv = m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def inverse(m):
    n = len(m)
    aug = [row[:] + idr[:] for row, idr in zip(m, identity(n))]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def sym_signature(m):
    """Sylvester signature (pos, neg, zero) of a symmetric matrix.

    Congruence diagonalization over Q: symmetric row+column elimination,
    with the classic 2x2 hyperbolic fix when the diagonal vanishes.
    """
    m = mat_copy(m)
    n = len(m)
    pos = neg = zero = 0
    idx = list(range(n))
    while idx:
        # find a nonzero diagonal entry among remaining indices
        k = next((i for i in idx if m[i][i] != 0), None)
        if k is None:
            # look for an off-diagonal nonzero pair; add row j to row i
            pair = None
            for i in idx:
                for j in idx:
                    if i != j and m[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                zero += len(idx)
                break
            i, j = pair
            for c in range(n):
                m[i][c] += m[j][c]
            for r in range(n):
                m[r][i] += m[r][j]
            k = i
        d = m[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(k)
        for i in idx:
            if m[i][k] != 0:
                f = m[i][k] / d
                for c in range(n):
                    m[i][c] -= f * m[k][c]
                for r in range(n):
                    m[r][i] -= f * m[r][k]
    return pos, neg, zero
