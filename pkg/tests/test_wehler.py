import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyglue.lattice import compose, identity, mat_mul, transpose
from cyglue.wehler import (
    WEHLER_GRAM,
    family_pullback_discrepancy,
    involution_pullback,
    iota,
    order_and_growth,
    power_closed_form,
    wehler_lattice,
    wehler_model,
)


def test_involution_images(W):
    i12 = involution_pullback(1, 2)
    assert i12(W(0, 0, 1)).coords == (2, 2, -1)
    assert i12(W(1, 0, 0)).coords == (1, 0, 0)
    assert involution_pullback(1, 3)(W(0, 1, 0)).coords == (2, -1, 2)
    assert involution_pullback(2, 3)(W(1, 0, 0)).coords == (-1, 2, 2)


def test_involution_argument_check():
    for bad in ((2, 1), (0, 1), (1, 4), (2, 2)):
        with pytest.raises(ValueError):
            involution_pullback(*bad)


@pytest.mark.parametrize("pair", [(1, 2), (1, 3), (2, 3)])
def test_involutions_square_to_identity_and_preserve_form(pair):
    m = involution_pullback(*pair)
    assert compose(m, m).is_identity()
    assert mat_mul(mat_mul(transpose(m.matrix), WEHLER_GRAM), m.matrix) == WEHLER_GRAM
    assert order_and_growth(m) .kind == "finite" and order_and_growth(m).order == 2


def test_iota_matrix_and_e3_image(W):
    assert iota().matrix == ((1, 2, 6), (0, -1, -2), (0, 2, 3))
    assert iota()(W(0, 0, 1)).coords == (6, -2, 3)


def test_closed_form_examples():
    assert power_closed_form(0).is_identity()
    assert power_closed_form(1).matrix == iota().matrix
    assert power_closed_form(2).matrix == ((1, 12, 20), (0, -3, -4), (0, 4, 5))


@pytest.mark.parametrize("a", range(0, 11))
def test_closed_form_equals_iterated_composition(a):
    iterated = identity(wehler_lattice())
    for _ in range(a):
        iterated = compose(iterated, iota())
    assert power_closed_form(a).matrix == iterated.matrix


@given(st.integers(-30, 30), st.integers(-30, 30))
def test_closed_form_is_a_group_homomorphism(a, b):
    assert compose(power_closed_form(a), power_closed_form(b)).matrix == power_closed_form(a + b).matrix


@given(st.integers(-12, 12))
def test_negative_powers_match_inverse(a):
    assert iota().power(a).matrix == power_closed_form(a).matrix


def test_iota_has_infinite_order_quadratic_growth():
    g = order_and_growth(iota())
    assert g.infinite and g.kind == "polynomial" and g.degree == 2
    assert order_and_growth(identity(wehler_lattice())).order == 1


def test_family_discrepancy(W):
    special, generic, diff = family_pullback_discrepancy()
    assert special.is_identity()
    assert generic.matrix == involution_pullback(1, 2).matrix
    assert diff.coords == (2, 2, -2)


def test_model_reference_ample():
    m = wehler_model()
    assert m.reference_ample.coords == (1, 1, 1)
    assert [e.square for e in m.fiber_classes] == [0, 0, 0]
