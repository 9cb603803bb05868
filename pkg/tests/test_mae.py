from fractions import Fraction

from effective_forms.jets import Poly, PolyKForm, hamiltonian_field_poly, lie_poly
from effective_forms.mae import (
    JetForm,
    canonical_pdes,
    check_jet_conditions,
    eval_mae,
    forward_jet,
    hess_det,
    laplacian,
    pde_from_form,
)
from effective_forms.normal_forms import representative
from effective_forms.symplectic import omega_form


def test_pde_from_representatives_matches_canonical_list():
    gamma = Fraction(3)
    pdes = canonical_pdes(gamma)
    direct = [
        pde_from_form(representative(1, gamma)).scale(Fraction(1, gamma)),
        pde_from_form(representative(2, gamma)),
        pde_from_form(representative(3, gamma)),
        pde_from_form(representative(4)),
        pde_from_form(representative(5)),
    ]
    for expected, got in zip(pdes, direct):
        assert expected.poly == got.poly


def test_special_lagrangian_at_unit_parameter():
    pde = pde_from_form(representative(3, Fraction(1)))
    target = laplacian().poly - hess_det().poly
    assert pde.poly == target or pde.poly == target.scale(Fraction(-1))


def test_family8_pde_is_constant_one():
    assert pde_from_form(representative(8)).poly == Poly.constant(6, 1)


def test_eval_mae_on_explicit_hessians():
    ident = [[Fraction(i == j) for j in range(3)] for i in range(3)]
    # harmonic-oscillator Hessian solves the row-5 Laplace equation: trace 0
    traceless = [
        [Fraction(1), Fraction(0), Fraction(0)],
        [Fraction(0), Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(-2)],
    ]
    assert eval_mae(representative(5), traceless) == 0
    assert eval_mae(representative(4), ident) == 1
    assert eval_mae(representative(8), ident) == 1


def test_forward_jet_passes_jet_conditions():
    w = representative(2, Fraction(1))
    h = Poly(6, {(2, 1, 0, 0, 0, 0): Fraction(1, 2)})
    k = Poly(6, {(0, 2, 2, 0, 0, 0): Fraction(1, 4)})
    jet = forward_jet(w, h, k)
    report = check_jet_conditions(jet)
    assert report.orbit_at_base.family == 2
    assert report.sigma1_solvable and report.sigma2_solvable
    assert report.conclusion
    # the certificate must actually verify: L_{X_h} omega0 = omega1
    cert = report.sigma1_certificate
    omega0 = PolyKForm.from_constant(jet.omega0)
    assert lie_poly(hamiltonian_field_poly(cert), omega0) == jet.omega1


def test_sigma1_negative_instance_fails():
    w = representative(2, Fraction(1))
    bad = PolyKForm(6, 3, {(1, 2, 3): Poly.variable(6, 1)})
    report = check_jet_conditions(JetForm(w, bad, PolyKForm.zero(6, 3)))
    assert not report.sigma1_solvable
    assert not report.conclusion


def test_trivial_jet_is_flat():
    w = representative(3, Fraction(1))
    jet = forward_jet(w, Poly.zero(6), Poly.zero(6))
    report = check_jet_conditions(jet)
    assert report.conclusion
