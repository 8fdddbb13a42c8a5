import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyglue.k3_cones import (
    FreeDecomposition,
    free_system_certificate,
    no_minus_two_certificate,
    oguiso_ample_certificate,
    oguiso_center_free_certificate,
    oguiso_minus_two_classes,
    recheck,
    section_identities,
    square_modulus,
    wehler_is_ample,
    wehler_no_minus_two_certificate,
)
from cyglue.lattice import IncompatibleClasses, Lattice
from cyglue.oguiso import fiber_class, polarization, section_class


def test_wehler_squares_are_multiples_of_four():
    cert = wehler_no_minus_two_certificate(10)
    assert cert.modulus == 4
    assert cert.excludes_minus_two
    assert cert.found == ()


def test_mod_four_certificate_agrees_with_exhaustive_enumeration(W):
    values = set()
    for x in range(-10, 11):
        for y in range(-10, 11):
            for z in range(-10, 11):
                values.add(W.form((x, y, z), (x, y, z)))
    assert all(v % 4 == 0 for v in values)
    assert -2 not in values


def test_square_modulus_on_other_lattices(O):
    assert square_modulus(O) == 2
    cert = no_minus_two_certificate(O, bound=2)
    assert not cert.excludes_minus_two
    assert (-1, 1, 0) in cert.found


@pytest.mark.parametrize("cls,ample", [((1, 1, 1), True), ((19, -4, 12), True), ((1, 0, 0), False),
                                       ((1, -1, 0), False), ((-1, -1, -1), False)])
def test_wehler_ampleness_examples(W, cls, ample):
    assert wehler_is_ample(W(cls)).ample is ample


def test_wehler_ampleness_refuses_other_lattice(O):
    with pytest.raises(IncompatibleClasses):
        wehler_is_ample(O(1, 0, 0))


def test_minus_two_classes_small_z():
    classes = oguiso_minus_two_classes(1)
    coords = {d.coords for d in classes}
    assert (-1, 1, 0) in coords
    assert (9, 1, 1) in coords and (1, 9, -1) in coords and (3, 3, 1) in coords
    for d in classes:
        assert d.square == -2 and d.dot(fiber_class()) >= 0


def test_oguiso_certificate_a1():
    cert = oguiso_ample_certificate(1, 1, 50)
    values = {c.description.split()[0]: c.value for c in cert.checks}
    assert values["(A)"] == 51 and values["(C)"] == 46 and values["(D)"] == 289
    assert cert.ample
    assert cert.cls.coords == (57, 6, 5)


def test_oguiso_certificate_fails_for_large_k():
    cert = oguiso_ample_certificate(1, 20, 50)
    assert not cert.ample


@pytest.mark.parametrize("a", range(1, 21))
def test_oguiso_k_equals_a_ample(a):
    cert = oguiso_ample_certificate(a, a, 50)
    assert cert.ample
    assert all(c.satisfied for c in cert.checks)
    assert recheck(cert)


def test_oguiso_certificate_argument_checks():
    with pytest.raises(ValueError):
        oguiso_ample_certificate(0, 1)
    with pytest.raises(ValueError):
        oguiso_ample_certificate(1, 1, 0)


@given(st.integers(-40, 40))
def test_section_identities(c):
    assert all(check.satisfied for check in section_identities(c))


def test_wehler_free_rule(W):
    cert = free_system_certificate(W(19, -4, 12))
    assert cert.free and cert.rule == "W"
    assert free_system_certificate(W(1, 0, 0)).free is None


def test_oguiso_center_free_rule():
    cert = oguiso_center_free_certificate(2)
    assert cert.free and cert.rule == "O"
    assert cert.cls.coords == (670, 24, 32)


def test_bad_decomposition_is_undetermined():
    amp = oguiso_ample_certificate(1, 1)
    wrong = FreeDecomposition(4, amp, 1, fiber_class())
    cert = free_system_certificate(4 * polarization(1), wrong)
    assert cert.free is None and cert.rule is None


def test_unknown_lattice_is_undetermined():
    lat = Lattice("u", ((2, 1), (1, 2)))
    assert free_system_certificate(lat(1, 0)).free is None


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 30), st.integers(1, 200))
def test_inequalities_imply_enumeration(a, k):
    cert = oguiso_ample_certificate(a, k, 10)
    by_name = {c.description[:3]: c.satisfied for c in cert.checks}
    if by_name["(A)"] and by_name["(C)"] and by_name["(D)"]:
        assert cert.checks[-1].value == 0


def test_section_classes_are_listed():
    coords = {d.coords for d in oguiso_minus_two_classes(3)}
    for c in range(-3, 4):
        assert section_class(c).coords in coords
