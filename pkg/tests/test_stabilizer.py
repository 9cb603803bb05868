from fractions import Fraction

from effective_forms.exterior import pullback
from effective_forms.normal_forms import representative
from effective_forms.spmaps import random_rational_symplectic
from effective_forms.stabilizer import (
    bracket,
    conjugate_subalgebra,
    hamiltonian_to_quadratic,
    in_sp,
    killing_report,
    prolongation,
    quadratic_to_hamiltonian,
    sp_basis,
    stabilizer,
)

EXPECTED_DIMS = {1: 8, 2: 8, 3: 8, 4: 8, 5: 8, 6: 11, 7: 11, 8: 14, 9: 21}
EXPECTED_KILLING = {
    1: (5, 3, 0),
    2: (4, 4, 0),
    3: (0, 8, 0),
    4: (2, 1, 5),
    5: (0, 3, 5),
    6: (4, 2, 5),
    7: (3, 3, 5),
    8: (5, 3, 6),
    9: (12, 9, 0),
}
EXPECTED_RADICAL = {1: 0, 2: 0, 3: 0, 4: 5, 5: 5, 6: 5, 7: 5, 8: 6, 9: 0}


def _rep(family):
    return (
        representative(family, Fraction(1)) if family <= 3 else representative(family)
    )


def test_sp_basis_dimension_and_membership():
    basis = sp_basis()
    assert len(basis) == 21
    for x in basis:
        assert in_sp(x)
    for x in basis:
        for y in basis:
            assert in_sp(bracket(x, y))


def test_stabilizer_dimensions():
    for family, dim in EXPECTED_DIMS.items():
        assert stabilizer(_rep(family)).dim == dim


def test_killing_signatures_and_radicals():
    for family in range(1, 10):
        sub = stabilizer(_rep(family))
        sig, radical = killing_report(sub)
        assert sig == EXPECTED_KILLING[family]
        assert radical == EXPECTED_RADICAL[family]


def test_killing_separates_rows_one_to_three():
    sigs = [killing_report(stabilizer(_rep(f)))[0] for f in (1, 2, 3)]
    assert len(set(sigs)) == 3
    assert sigs[2] == (0, 8, 0)  # negative definite: compact stabilizer


def test_stabilizer_equivariance():
    w = _rep(2)
    f = random_rational_symplectic(41)
    direct = stabilizer(pullback(f, w))
    moved = conjugate_subalgebra(stabilizer(w), f)
    assert direct.dim == moved.dim
    assert {tuple(map(tuple, b.rows)) for b in direct.basis} == {
        tuple(map(tuple, b.rows)) for b in moved.basis
    }


def test_prolongation_dimensions():
    expected = {1: 0, 2: 0, 3: 0, 4: 7, 5: 7, 6: 19, 7: 19, 8: 25, 9: 56}
    for family, dim in expected.items():
        assert prolongation(stabilizer(_rep(family))).dim == dim


def test_hamiltonian_round_trip():
    h = {(1, 4): Fraction(1), (2, 2): Fraction(3), (3, 5): Fraction(-2)}
    a = quadratic_to_hamiltonian(h)
    assert in_sp(a)
    assert hamiltonian_to_quadratic(a) == h


def test_hamiltonian_example_scaling_field():
    a = quadratic_to_hamiltonian({(1, 4): Fraction(1)})
    expected = [[Fraction(0)] * 6 for _ in range(6)]
    expected[0][0] = Fraction(1)
    expected[3][3] = Fraction(-1)
    assert [list(r) for r in a.rows] == expected
