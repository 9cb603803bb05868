from fractions import Fraction

from effective_forms.jets import (
    Poly,
    PolyKForm,
    PolyVectorField,
    d,
    hamiltonian_field_poly,
    interior_poly,
    lie_poly,
    monomial_basis,
)
from effective_forms.symplectic import omega_form


def x(i):
    return Poly.variable(6, i)


def test_poly_arithmetic_and_diff():
    p = x(1) * x(1) * x(2) + x(3).scale(Fraction(5))
    assert p.diff(1) == x(1) * x(2) + x(1) * x(2)
    assert p.diff(3) == Poly.constant(6, 5)
    assert p.evaluate([1, 2, 3, 0, 0, 0]) == 1 * 1 * 2 + 15


def test_monomial_basis_sizes():
    assert len(monomial_basis(6, 3)) == 56
    assert len(monomial_basis(6, 4)) == 126


def test_d_squared_is_zero():
    form = PolyKForm(
        6, 1, {(2,): x(1) * x(4), (5,): x(3) * x(3) * x(6)}
    )
    assert d(d(form)).is_zero()


def test_cartan_formula():
    vf = PolyVectorField([x(2) * x(2), x(1), Poly.zero(6), x(6), Poly.zero(6), x(3)])
    form = PolyKForm(6, 2, {(1, 4): x(5), (2, 3): x(1) * x(6)})
    lhs = lie_poly(vf, form)
    rhs = d(interior_poly(vf, form)) + interior_poly(vf, d(form))
    assert lhs == rhs


def test_hamiltonian_field_contraction_is_dh():
    h = x(1) * x(5) + x(2) * x(2) * x(4)
    omega = PolyKForm.from_constant(omega_form(3))
    assert interior_poly(hamiltonian_field_poly(h), omega) == d(
        PolyKForm(6, 0, {(): h})
    )


def test_hamiltonian_fields_preserve_omega():
    omega = PolyKForm.from_constant(omega_form(3))
    for h in (x(1) * x(2) * x(3), x(4) * x(4), x(3) * x(6) * x(6)):
        assert lie_poly(hamiltonian_field_poly(h), omega).is_zero()
