import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyglue.lattice import compose, mat_vec
from cyglue.oguiso import (
    basis_change,
    center_class,
    fiber_class,
    hlm_lattice,
    hyperplane_class,
    oguiso_lattice,
    polarization,
    section_class,
    translation_pullback,
)
from cyglue.wehler import order_and_growth


def test_hlm_intersection_data():
    H, L, M = hlm_lattice().basis()
    assert (H.square, H.dot(L), H.dot(M), L.square, M.square, L.dot(M)) == (4, 1, 1, -2, -2, 0)


def test_basis_change_gives_fev_gram():
    lat, _ = basis_change()
    assert lat.gram == oguiso_lattice().gram == ((0, 1, 0), (1, 0, 0), (0, 0, -20))


def test_hyperplane_is_4f_3e_v(O):
    h = hyperplane_class()
    assert h.coords == (4, 3, 1)
    assert h.square == 4
    # h.f = H.(H - L) = 3
    assert h.dot(fiber_class()) == 3
    _, to_fev = basis_change()
    assert mat_vec(to_fev, (0, 0, 1)) == (-1, 1, 0)  # M = e - f


@pytest.mark.parametrize("a", range(1, 11))
def test_translation_of_h(a):
    assert translation_pullback(a)(hyperplane_class()).coords == (30 * a * a + 20 * a + 4, 3, 3 * a + 1)


@pytest.mark.parametrize("a", range(1, 6))
def test_polarization_and_center(a):
    assert polarization(a).coords == (30 * a * a + 20 * a + 8, 6, 3 * a + 2)
    assert center_class(a).coords == (120 * a * a + 79 * a + 32, 24, 12 * a + 8)


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_translations_form_a_group(a, b):
    assert compose(translation_pullback(a), translation_pullback(b)).matrix == translation_pullback(a + b).matrix


@given(st.integers(-30, 30))
def test_sections_are_minus_two_and_meet_fiber_once(c):
    g = section_class(c)
    assert g.square == -2
    assert g.dot(fiber_class()) == 1


def test_translation_fixes_fiber_and_moves_zero_section():
    t = translation_pullback(1)
    assert t(fiber_class()) == fiber_class()
    assert t(section_class(0)) == section_class(1)
    assert order_and_growth(t).infinite
