import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_form
from effective_forms.exterior import Vector
from effective_forms.symplectic import (
    bot,
    effective_decompose,
    effective_dimension,
    gamma,
    gamma_inv,
    is_effective,
    omega_eval,
    omega_form,
    recursive_split,
    top,
)


@given(st.integers(0, 10**6), st.integers(0, 4))
@settings(max_examples=60, deadline=None)
def test_top_bot_commutator(seed, degree):
    rng = random.Random(seed)
    w = random_form(rng, 6, degree)
    comm = bot(top(w)) - top(bot(w))
    assert comm.coeffs == w.scale(Fraction(3 - degree)).coeffs


def test_effective_dimension_degree3():
    assert effective_dimension(6, 3) == 14


def test_omega_is_not_effective():
    assert not is_effective(omega_form(3))


@given(st.integers(0, 10**6), st.integers(0, 3))
@settings(max_examples=40, deadline=None)
def test_effective_decompose_round_trip(seed, degree):
    rng = random.Random(seed)
    w = random_form(rng, 6, degree)
    dec = effective_decompose(w)
    total = None
    for level, comp in enumerate(dec.components):
        assert is_effective(comp)
        lifted = comp
        for _ in range(level):
            lifted = top(lifted)
        total = lifted if total is None else total + lifted
    assert total.coeffs == w.coeffs


def test_gamma_round_trip():
    for i in range(1, 7):
        x = Vector.basis(6, i)
        assert gamma_inv(gamma(x)).entries == x.entries


def test_recursive_split_reassembles():
    rng = random.Random(3)
    w = effective_decompose(random_form(rng, 6, 3)).components[0]
    a = Vector.basis(6, 1)
    b = Vector.basis(6, 4)
    assert omega_eval(a, b) == 1
    sp = recursive_split(w, a, b)
    assert sp.reassemble().coeffs == w.coeffs


def test_effective_components_unique():
    rng = random.Random(11)
    w = random_form(rng, 6, 3)
    dec1 = effective_decompose(w)
    dec2 = effective_decompose(w)
    for c1, c2 in zip(dec1.components, dec2.components):
        assert c1.coeffs == c2.coeffs
