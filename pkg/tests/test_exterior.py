import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from conftest import random_form
from effective_forms.exterior import KForm, Vector, interior, pullback, wedge
from effective_forms.spmaps import random_rational_symplectic


@given(st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_wedge_graded_commutativity(seed, p, q):
    rng = random.Random(seed)
    a = random_form(rng, 6, p)
    b = random_form(rng, 6, q)
    lhs = wedge(a, b)
    rhs = wedge(b, a).scale(Fraction((-1) ** (p * q)))
    assert lhs.coeffs == rhs.coeffs


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_wedge_associativity(seed):
    rng = random.Random(seed)
    a = random_form(rng, 6, 1)
    b = random_form(rng, 6, 2)
    c = random_form(rng, 6, 2)
    assert wedge(wedge(a, b), c).coeffs == wedge(a, wedge(b, c)).coeffs


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_interior_is_antiderivation(seed):
    rng = random.Random(seed)
    a = random_form(rng, 6, 2)
    b = random_form(rng, 6, 2)
    x = Vector([Fraction(rng.randint(-3, 3)) for _ in range(6)])
    lhs = interior(x, wedge(a, b))
    rhs = wedge(interior(x, a), b) + wedge(a, interior(x, b))
    assert lhs.coeffs == rhs.coeffs


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_pullback_functoriality(seed):
    rng = random.Random(seed)
    w = random_form(rng, 6, 3)
    f = random_rational_symplectic(seed % 997)
    g = random_rational_symplectic((seed + 1) % 997)
    assert pullback(f.compose(g), w).coeffs == pullback(g, pullback(f, w)).coeffs


def test_pullback_identity():
    rng = random.Random(5)
    w = random_form(rng, 6, 3)
    ident = __import__(
        "effective_forms.exterior", fromlist=["LinearMap"]
    ).LinearMap.identity(6)
    assert pullback(ident, w).coeffs == w.coeffs


def test_interior_squares_to_zero():
    rng = random.Random(9)
    w = random_form(rng, 6, 3)
    x = Vector([Fraction(v) for v in (1, -2, 3, 0, 1, 2)])
    assert interior(x, interior(x, w)).coeffs == {}
