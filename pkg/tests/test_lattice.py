import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyglue.lattice import (
    IncompatibleClasses,
    Isometry,
    Lattice,
    NotAnIsometry,
    change_basis,
    compose,
    determinant,
    hermite_normal_form,
    identity,
    integer_inverse,
    integer_kernel,
    kernel_rank,
    mat_mul,
    mat_vec,
    primitive,
    rank,
    transpose,
)

small = st.integers(-6, 6)


def test_pairing_examples(W):
    e1, e2, e3 = W.basis()
    assert e1.square == 0
    assert e1.dot(e2) == 2
    assert W(1, 1, 1).square == 12
    assert W(19, -4, 12).square == 2 * (19 * -4 + 19 * 12 + -4 * 12) * 2


def test_gram_validation():
    with pytest.raises(ValueError):
        Lattice("bad", ((0, 1), (2, 0)))
    with pytest.raises(ValueError):
        Lattice("bad", ((0, 1, 0), (1, 0, 0)))
    with pytest.raises(ValueError):
        Lattice("bad", ((1,),), ("a", "b"))


def test_mixed_lattices_refused(W, O):
    with pytest.raises(IncompatibleClasses):
        W(1, 0, 0) + O(1, 0, 0)
    with pytest.raises(IncompatibleClasses):
        W(1, 0, 0).dot(O(1, 0, 0))


def test_isometry_rejects_non_isometry(W):
    with pytest.raises(NotAnIsometry):
        Isometry(W, ((1, 1, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(NotAnIsometry):
        Isometry(W, ((2, 0, 0), (0, 2, 0), (0, 0, 2)))


def test_compose_is_pullback_order(W):
    from cyglue.wehler import involution_pullback
    m = compose(involution_pullback(1, 2), involution_pullback(1, 3))
    assert m.matrix == ((1, 2, 6), (0, -1, -2), (0, 2, 3))


def test_inverse_and_negative_power(W):
    from cyglue.wehler import iota
    i = iota()
    assert compose(i, i.inverse()).is_identity()
    assert compose(i.power(3), i.power(-3)).is_identity()
    assert i.power(0).is_identity()


def test_determinant_and_inverse():
    a = ((2, 1, 0), (1, 1, 0), (0, 0, 1))
    assert determinant(a) == 1
    assert mat_mul(a, integer_inverse(a)) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert determinant(((1, 2), (2, 4))) == 0
    with pytest.raises(ValueError):
        integer_inverse(((2, 0), (0, 1)))


def test_hnf_known_example():
    a = ((2, 4, 6), (1, 3, 5))
    h, u, piv = hermite_normal_form(a)
    assert mat_mul(a, u) == h
    assert abs(determinant(u)) == 1
    assert len(piv) == 2
    assert all(row[2] == 0 for row in h)


def test_kernel_examples():
    assert integer_kernel(((1, 1, 1),)) and len(integer_kernel(((1, 1, 1),))) == 2
    assert integer_kernel((), 3) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    ker = integer_kernel(((2, 4),))
    assert ker == [(-2, 1)] or ker == [(2, -1)]
    assert integer_kernel(((1, 0), (0, 1))) == []


def test_primitive():
    assert primitive((4, -6, 8)) == (2, -3, 4)
    assert primitive((0, 0)) == (0, 0)


def test_change_basis_round_trip():
    lat = Lattice("hlm", ((4, 1, 1), (1, -2, 0), (1, 0, -2)))
    new, to_new = change_basis(lat, ((1, -1, 0), (1, -1, 1), (-6, 7, -3)), "fev")
    assert new.gram == ((0, 1, 0), (1, 0, 0), (0, 0, -20))
    # H in the new basis, expanded back, is H
    h_new = mat_vec(to_new, (1, 0, 0))
    back = mat_vec(transpose(((1, -1, 0), (1, -1, 1), (-6, 7, -3))), h_new)
    assert back == (1, 0, 0)


matrices = st.lists(st.lists(small, min_size=1, max_size=6), min_size=1, max_size=5).filter(
    lambda rows: len({len(r) for r in rows}) == 1)


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_kernel_annihilates_and_has_right_rank(a):
    n = len(a[0])
    ker = integer_kernel(a, n)
    for v in ker:
        assert all(x == 0 for x in mat_vec(a, v))
    assert len(ker) == n - rank(a) == kernel_rank(a, n)
    if ker:
        assert rank(ker) == len(ker)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_hnf_transform_is_unimodular(a):
    h, u, _ = hermite_normal_form(a)
    assert mat_mul(a, u) == h
    assert abs(determinant(u)) == 1


def test_registered_isometries_preserve_form_randomized(isometries):
    """10^4 random words in the registered isometries, checked on matrices and on random classes."""
    rng = random.Random(20240917)
    gens = isometries
    by_lattice: dict = {}
    for g in gens:
        by_lattice.setdefault(g.lattice, []).append(g)
    cases = 0
    while cases < 10_000:
        for lat, pool in by_lattice.items():
            word = identity(lat)
            for _ in range(rng.randint(1, 4)):
                word = compose(word, rng.choice(pool))
            gram = lat.gram
            m = word.matrix
            assert mat_mul(mat_mul(transpose(m), gram), m) == gram
            x = lat([rng.randint(-20, 20) for _ in range(lat.rank)])
            y = lat([rng.randint(-20, 20) for _ in range(lat.rank)])
            assert word(x).dot(word(y)) == x.dot(y)
            cases += 1


@settings(max_examples=200, deadline=None)
@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3), st.integers(-5, 5))
def test_class_arithmetic_is_bilinear(x, y, k):
    from cyglue.wehler import wehler_lattice
    W = wehler_lattice()
    a, b = W(x), W(y)
    assert (a + b).square == a.square + 2 * a.dot(b) + b.square
    assert (k * a).dot(b) == k * a.dot(b)
    assert (a - a).is_zero()
