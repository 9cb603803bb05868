from fractions import Fraction

import pytest

from effective_forms.classify import classify, reduce
from effective_forms.exterior import pullback
from effective_forms.normal_forms import representative
from effective_forms.spmaps import random_rational_symplectic, symplectic_defect

PARAMS = (Fraction(1), Fraction(2), Fraction(5, 3), Fraction(1, 2))


def test_representatives_classify_to_their_row():
    for family in range(1, 10):
        if family <= 3:
            for p in PARAMS:
                label = classify(representative(family, p))
                assert (label.family, label.parameter) == (family, p)
        else:
            label = classify(representative(family))
            assert label.family == family
            assert label.parameter is None


def test_classification_is_conjugation_invariant():
    for family in range(1, 10):
        w = (
            representative(family, Fraction(7, 4))
            if family <= 3
            else representative(family)
        )
        for seed in range(5):
            conj = pullback(random_rational_symplectic(53 * family + seed), w)
            label = classify(conj)
            assert label.family == family
            if family <= 3:
                assert label.parameter == Fraction(7, 4)


def test_reduce_q_zero_family_is_exact():
    w = representative(8)
    f = random_rational_symplectic(17)
    conj = pullback(f, w)
    label = reduce(conj)
    assert label.family == 8
    assert pullback(label.witness, w) == conj
    assert symplectic_defect(label.witness) == 0


def test_reduce_zero_form():
    from effective_forms.exterior import KForm

    label = reduce(KForm(6, 3, {}))
    assert label.family == 9
    assert pullback(label.witness, KForm(6, 3, {})).coeffs == {}


@pytest.mark.parametrize("family", [2, 3])
@pytest.mark.parametrize("param", [Fraction(1), Fraction(5, 3)])
def test_reduce_elliptic_families(family, param):
    w = representative(family, param)
    f = random_rational_symplectic(29 * family)
    conj = pullback(f, w)
    label = reduce(conj)
    assert label.family == family
    assert label.parameter == param
    recon = pullback(label.witness, w.to_float())
    diff = max(
        abs(recon.coefficient(i) - float(conj.coefficient(i)))
        for i in conj.coeffs
    )
    assert diff < 1e-8
    assert symplectic_defect(label.witness) < 1e-10


def test_distinct_parameters_distinct_invariant():
    a = classify(representative(1, Fraction(2)))
    b = classify(representative(1, Fraction(3)))
    assert a.parameter != b.parameter
