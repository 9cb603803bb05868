"""Numerical search for a symplectic map carrying one effective 3-form to
another known (by invariants) to lie on the same orbit.

The map is parameterized as exp(X) with X in sp(6) (21 coordinates), so
symplecticity is structural; the solve is a least-squares fit of the 20
pullback coefficients with deterministic seeded restarts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np
from scipy.linalg import expm
from scipy.optimize import least_squares

from .classify import classify
from .exterior import KForm, LinearMap, pullback
from .spmaps import symplectic_defect


class FamilyMismatchError(ValueError):
    """The two forms have different orbit invariants; no witness exists."""


@dataclass(frozen=True)
class SolverOptions:
    seed: int = 0
    restarts: int = 8
    max_iterations: int = 400
    tolerance: float = 1e-12  # least-squares convergence tolerances
    residual_threshold: float = 1e-8
    defect_threshold: float = 1e-10
    init_scale: float = 0.3


@dataclass
class WitnessResult:
    map: Optional[LinearMap]
    residual: float
    converged: bool
    restarts_used: int


_IDX3 = list(combinations(range(1, 7), 3))


def _sp_generator(x):
    """21 coordinates -> matrix in sp(6): blocks [[A, B], [C, -A^T]]."""
    a = x[:9].reshape(3, 3)
    b = np.zeros((3, 3))
    c = np.zeros((3, 3))
    iu = np.triu_indices(3)
    b[iu] = x[9:15]
    b.T[iu] = x[9:15]
    c[iu] = x[15:21]
    c.T[iu] = x[15:21]
    return np.block([[a, b], [c, -a.T]])


def _coeff_vector(w: KForm):
    return np.array([float(w.coefficient(idx)) for idx in _IDX3])


def _pullback_operator(dst_vec):
    """Return fn(F) -> coefficient vector of pullback(F, dst), vectorized.

    Coefficient J of the pullback is sum_I dst_I * det(F[I rows, J cols]);
    all 3x3 minors are batched through one np.linalg.det call.
    """
    support = [i for i, c in enumerate(dst_vec) if c != 0.0]
    rows = np.array([[j - 1 for j in _IDX3[i]] for i in support])
    weights = dst_vec[support]
    cols = np.array([[j - 1 for j in idx] for idx in _IDX3])

    def apply(f):
        # blocks[s, t] = F[rows[s], :][:, cols[t]], shape (S, 20, 3, 3)
        blocks = f[rows[:, None, :, None], cols[None, :, None, :]]
        return weights @ np.linalg.det(blocks)

    return apply


def solve_conjugacy(src: KForm, dst: KForm, opts: SolverOptions = SolverOptions()) -> WitnessResult:
    """Find F = exp(X), X in sp(6), with pullback(F, dst) = src."""
    lab_s, lab_d = classify(src), classify(dst)
    if lab_s.family != lab_d.family:
        raise FamilyMismatchError(
            f"family {lab_s.family} vs {lab_d.family}: no symplectic witness exists"
        )
    src_f = src.to_float()
    dst_f = dst.to_float()
    src_vec = _coeff_vector(src_f)
    if dst_f.is_zero() and src_f.is_zero():
        return WitnessResult(LinearMap.identity(6, rational=False), 0.0, True, 0)

    pull = _pullback_operator(_coeff_vector(dst_f))

    def residual_vec(x):
        f = expm(_sp_generator(x))
        return pull(f) - src_vec

    rng = np.random.RandomState(opts.seed)
    best = WitnessResult(None, np.inf, False, 0)
    for restart in range(opts.restarts):
        if restart == 0:
            x0 = np.zeros(21)
        else:
            rng = np.random.RandomState(opts.seed + restart)
            x0 = rng.uniform(-opts.init_scale, opts.init_scale, 21) * (1 + restart / 2)
        try:
            res = least_squares(
                residual_vec,
                x0,
                method="trf",
                xtol=opts.tolerance,
                ftol=opts.tolerance,
                gtol=opts.tolerance,
                max_nfev=opts.max_iterations * 22,
            )
        except Exception:
            continue
        f = expm(_sp_generator(res.x))
        fmap = LinearMap(f.tolist(), rational=False)
        residual = float(np.max(np.abs(residual_vec(res.x))))
        defect = symplectic_defect(fmap)
        if residual < best.residual:
            best = WitnessResult(fmap, residual, False, restart + 1)
        if residual <= opts.residual_threshold and defect <= opts.defect_threshold:
            return WitnessResult(fmap, residual, True, restart + 1)
    return best


def random_sp(seed: int, scale: float) -> LinearMap:
    """exp of a random sp(6) element with coordinates uniform in
    [-scale, scale]; deterministic per seed."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    rng = np.random.RandomState(seed)
    x = rng.uniform(-scale, scale, 21)
    return LinearMap(expm(_sp_generator(x)).tolist(), rational=False)
