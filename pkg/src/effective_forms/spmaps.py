"""Symplectic 6x6 matrices: membership checks and random rational samples."""

from __future__ import annotations

import random
from fractions import Fraction

from . import rational_linalg as rl
from .exterior import LinearMap
from .symplectic import omega_matrix


def symplectic_defect(f: LinearMap):
    """max-norm of F^T J F - J; zero iff F is symplectic."""
    n = f.dim // 2
    j = omega_matrix(n, f.rational)
    rows = [list(r) for r in f.rows]
    ftjf = rl.mat_mul(rl.mat_mul(rl.transpose(rows), j), rows)
    return max(
        abs(ftjf[i][k] - j[i][k]) for i in range(f.dim) for k in range(f.dim)
    )


def is_symplectic(f: LinearMap, tol=None) -> bool:
    d = symplectic_defect(f)
    if tol is None:
        return d == 0
    return d <= tol


def random_rational_symplectic(seed: int, n=3, factors=3, entry_bound=2) -> LinearMap:
    """Random element of Sp(2n, Q): a short product of elementary symplectic
    generators with small rational entries.  Deterministic per seed."""
    rng = random.Random(seed)
    dim = 2 * n

    def rand_frac():
        return Fraction(rng.randint(-entry_bound, entry_bound), rng.choice([1, 1, 2]))

    def sym():
        s = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                s[i][j] = s[j][i] = rand_frac()
        return s

    out = rl.identity(dim)
    for _ in range(factors):
        kind = rng.randrange(3)
        g = rl.identity(dim)
        if kind == 0:
            s = sym()
            for i in range(n):
                for j in range(n):
                    g[i][n + j] = s[i][j]
        elif kind == 1:
            s = sym()
            for i in range(n):
                for j in range(n):
                    g[n + i][j] = s[i][j]
        else:
            while True:
                m = [[rand_frac() for _ in range(n)] for _ in range(n)]
                if rl.det(m) != 0:
                    break
            minv_t = rl.transpose(rl.inverse(m))
            for i in range(n):
                for j in range(n):
                    g[i][j] = m[i][j]
                    g[n + i][n + j] = minv_t[i][j]
        out = rl.mat_mul(out, g)
    return LinearMap(out)
