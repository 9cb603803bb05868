"""Exterior algebra on R^4 / R^6 with exact or float scalars.

Forms are stored sparsely: a map from strictly increasing 1-based index
tuples to nonzero coefficients.  The basis convention on R^6 is
e1,e2,e3 -> indices 1..3 and f1,f2,f3 -> indices 4..6.

A form is either in rational mode (coefficients are Fraction) or in float
mode; the two modes never mix silently.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


class ScalarModeError(TypeError):
    pass


class DimensionError(ValueError):
    pass


def as_scalar(value, rational):
    if rational:
        if isinstance(value, float):
            raise ScalarModeError("float coefficient in rational mode")
        return Fraction(value)
    return float(value)


def _merge_sorted(idx_a, idx_b):
    """Merge two strictly increasing tuples; return (sign, merged) or None
    if they share an index."""
    merged = []
    sign = 1
    i = j = 0
    na, nb = len(idx_a), len(idx_b)
    while i < na and j < nb:
        if idx_a[i] == idx_b[j]:
            return None
        if idx_a[i] < idx_b[j]:
            merged.append(idx_a[i])
            i += 1
        else:
            # idx_b[j] jumps over the remaining na - i entries of idx_a
            if (na - i) % 2:
                sign = -sign
            merged.append(idx_b[j])
            j += 1
    merged.extend(idx_a[i:])
    merged.extend(idx_b[j:])
    return sign, tuple(merged)


class KForm:
    """Degree-k exterior form with sparse canonical coefficients."""

    __slots__ = ("dim", "degree", "coeffs", "rational")

    def __init__(self, dim, degree, coeffs=None, rational=True):
        if not 0 <= degree <= dim:
            raise DimensionError(f"degree {degree} out of range for dim {dim}")
        self.dim = dim
        self.degree = degree
        self.rational = rational
        clean = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise DimensionError(f"index tuple {idx} has wrong length")
            if any(not 1 <= i <= dim for i in idx) or any(
                a >= b for a, b in zip(idx, idx[1:])
            ):
                raise DimensionError(f"index tuple {idx} not strictly increasing in 1..{dim}")
            c = as_scalar(c, rational)
            if c != 0:
                clean[idx] = c
        self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim, degree, rational=True):
        return cls(dim, degree, {}, rational)

    @classmethod
    def basis(cls, dim, idx, rational=True):
        idx = tuple(idx)
        return cls(dim, len(idx), {idx: 1 if rational else 1.0}, rational)

    @classmethod
    def constant(cls, dim, value, rational=True):
        return cls(dim, 0, {(): value}, rational)

    # -- bookkeeping -------------------------------------------------------

    def _check_compatible(self, other):
        if self.dim != other.dim:
            raise DimensionError("ambient dimensions differ")
        if self.rational != other.rational:
            raise ScalarModeError("mixed rational/float operands")

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.degree == other.degree
            and self.rational == other.rational
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.dim, self.degree, frozenset(self.coeffs.items())))

    def __add__(self, other):
        self._check_compatible(other)
        if self.degree != other.degree:
            # adding a zero form of the wrong degree is harmless and shows up
            # in degenerate operator compositions (top/bot past the top degree)
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise DimensionError("degrees differ")
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            out[idx] = out.get(idx, 0) + c
        return KForm(self.dim, self.degree, out, self.rational)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = as_scalar(c, self.rational)
        return KForm(
            self.dim, self.degree, {i: c * v for i, v in self.coeffs.items()}, self.rational
        )

    def to_float(self):
        return KForm(
            self.dim, self.degree, {i: float(v) for i, v in self.coeffs.items()}, rational=False
        )

    def coefficient(self, idx):
        return self.coeffs.get(tuple(idx), Fraction(0) if self.rational else 0.0)

    def max_abs(self):
        return max((abs(c) for c in self.coeffs.values()), default=0)

    def terms(self):
        return sorted(self.coeffs.items())

    def __repr__(self):
        if not self.coeffs:
            return f"KForm({self.dim}, {self.degree}, 0)"
        body = " + ".join(f"{c}*x{''.join(map(str, i))}" for i, c in self.terms())
        return f"KForm({self.dim}, {self.degree}, {body})"


class Vector:
    """Vector in the (e1..en, f1..fn) basis."""

    __slots__ = ("dim", "entries", "rational")

    def __init__(self, entries, rational=True):
        self.entries = tuple(as_scalar(v, rational) for v in entries)
        self.dim = len(self.entries)
        self.rational = rational

    @classmethod
    def basis(cls, dim, i, rational=True):
        one = 1 if rational else 1.0
        return cls([one if j == i else 0 for j in range(1, dim + 1)], rational)

    def __add__(self, other):
        return Vector(
            [a + b for a, b in zip(self.entries, other.entries)], self.rational
        )

    def __eq__(self, other):
        return isinstance(other, Vector) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def scale(self, c):
        c = as_scalar(c, self.rational)
        return Vector([c * v for v in self.entries], self.rational)

    def is_zero(self):
        return all(v == 0 for v in self.entries)

    def __repr__(self):
        return f"Vector({list(self.entries)})"


class LinearMap:
    """Square matrix acting on Vectors by left multiplication."""

    __slots__ = ("dim", "rows", "rational")

    def __init__(self, rows, rational=True):
        self.rows = tuple(
            tuple(as_scalar(v, rational) for v in row) for row in rows
        )
        self.dim = len(self.rows)
        if any(len(r) != self.dim for r in self.rows):
            raise DimensionError("matrix is not square")
        self.rational = rational

    @classmethod
    def identity(cls, dim, rational=True):
        one = 1 if rational else 1.0
        return cls(
            [[one if i == j else 0 for j in range(dim)] for i in range(dim)], rational
        )

    def apply(self, v: Vector) -> Vector:
        return Vector(
            [sum(a * x for a, x in zip(row, v.entries)) for row in self.rows],
            self.rational,
        )

    def compose(self, other: "LinearMap") -> "LinearMap":
        ot = list(zip(*other.rows))
        return LinearMap(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.rows],
            self.rational,
        )

    def __eq__(self, other):
        return isinstance(other, LinearMap) and self.rows == other.rows

    def __repr__(self):
        return f"LinearMap({[list(r) for r in self.rows]})"


# -- operations -----------------------------------------------------------


def wedge(a: KForm, b: KForm) -> KForm:
    a._check_compatible(b)
    deg = a.degree + b.degree
    if deg > a.dim:
        return KForm.zero(a.dim, a.dim, a.rational)
    out = {}
    for ia, ca in a.coeffs.items():
        for ib, cb in b.coeffs.items():
            m = _merge_sorted(ia, ib)
            if m is None:
                continue
            sign, idx = m
            out[idx] = out.get(idx, 0) + sign * ca * cb
    return KForm(a.dim, deg, out, a.rational)


def interior(x: Vector, w: KForm) -> KForm:
    if w.degree == 0:
        raise DimensionError("interior product of a 0-form")
    if x.dim != w.dim:
        raise DimensionError("ambient dimensions differ")
    if x.rational != w.rational:
        raise ScalarModeError("mixed rational/float operands")
    out = {}
    for idx, c in w.coeffs.items():
        for pos, i in enumerate(idx):
            xi = x.entries[i - 1]
            if xi == 0:
                continue
            sign = -1 if pos % 2 else 1
            rest = idx[:pos] + idx[pos + 1 :]
            out[rest] = out.get(rest, 0) + sign * xi * c
    return KForm(w.dim, w.degree - 1, out, w.rational)


def pullback(f: LinearMap, w: KForm) -> KForm:
    """(F^* w)(v1,...,vk) = w(F v1, ..., F vk)."""
    if f.dim != w.dim:
        raise DimensionError("ambient dimensions differ")
    if f.rational != w.rational:
        raise ScalarModeError("mixed rational/float operands")
    k = w.degree
    if k == 0:
        return w
    out = {}
    cols = list(range(w.dim))
    for jdx in combinations(cols, k):
        acc = None
        for idx, c in w.coeffs.items():
            # minor of F with rows idx, columns jdx
            sub = [[f.rows[i - 1][j] for j in jdx] for i in idx]
            d = _small_det(sub)
            if d != 0:
                acc = d * c if acc is None else acc + d * c
        if acc not in (None, 0):
            out[tuple(j + 1 for j in jdx)] = acc
    return KForm(w.dim, k, out, w.rational)


def _small_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
    # fall back to Laplace expansion; degrees here never exceed 6
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _small_det(minor)
        total = total - term if j % 2 else total + term
    return total


def lie_derivative_linear(a: LinearMap, w: KForm) -> KForm:
    """Lie derivative of a constant-coefficient form along the linear field
    q -> A q:  (L_A w)(v1,...,vk) = sum_i w(v1,...,A v_i,...,vk).

    On 1-forms this sends x_m to sum_j A[m][j] x_j, extended as a derivation.
    """
    if a.dim != w.dim:
        raise DimensionError("ambient dimensions differ")
    if a.rational != w.rational:
        raise ScalarModeError("mixed rational/float operands")
    out = {}
    for idx, c in w.coeffs.items():
        for pos, i in enumerate(idx):
            for j in range(1, w.dim + 1):
                aij = a.rows[i - 1][j - 1]
                if aij == 0:
                    continue
                # replace slot pos index i by j, resort
                rest = idx[:pos] + idx[pos + 1 :]
                if j in rest:
                    continue
                sign = -1 if pos % 2 else 1
                m = _merge_sorted((j,), rest)
                if m is None:
                    continue
                s2, new_idx = m
                out[new_idx] = out.get(new_idx, 0) + sign * s2 * aij * c
    return KForm(w.dim, w.degree, out, w.rational)
