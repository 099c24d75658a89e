import pytest

from swcalc.errors import GuardViolation
from swcalc.lattice import (QuadraticForm, characteristic_vectors,
                            diagonal_form, diagonalize, e8_form,
                            max_characteristic_square, spinc_with_max_square)


def is_characteristic(q, c):
    return all((q.pairing(c, basis) - q.evaluate(basis)) % 2 == 0
               for basis in identity_rows(q.rank))


def identity_rows(n):
    return [[1 if j == i else 0 for j in range(n)] for i in range(n)]


# ----- form validation -----

def test_form_validation():
    with pytest.raises(ValueError):
        QuadraticForm(((1,),))  # positive definite
    with pytest.raises(ValueError):
        QuadraticForm(((-2,),))  # not unimodular
    with pytest.raises(ValueError):
        QuadraticForm(((-1, 1), (0, -1)))  # not symmetric
    assert QuadraticForm(()).rank == 0


def test_e8_fixture_is_even_unimodular_definite():
    q = e8_form()
    assert q.rank == 8
    assert all(q.gram[i][i] == -2 for i in range(8))


# ----- characteristic vectors -----

def test_rank_one_odd_multiples():
    vecs = characteristic_vectors(diagonal_form(1), 3)
    assert sorted(vecs) == [(-3,), (-1,), (1,), (3,)]


def test_rank_two_units():
    vecs = characteristic_vectors(diagonal_form(2), 1)
    assert sorted(vecs) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]


def test_e8_contains_zero():
    vecs = characteristic_vectors(e8_form(), 1)
    assert (0,) * 8 in vecs


def test_characteristic_closed_under_negation():
    for q, bound in [(diagonal_form(3), 2), (e8_form(), 1),
                     (QuadraticForm(((-2, 1), (1, -1))), 2)]:
        vecs = set(characteristic_vectors(q, bound))
        assert {tuple(-x for x in v) for v in vecs} == vecs


def test_even_form_contains_zero_always():
    for q in (e8_form(),):
        assert (0,) * q.rank in characteristic_vectors(q, 1)


def test_characteristic_condition_verified():
    q = QuadraticForm(((-2, 1), (1, -1)))
    for c in characteristic_vectors(q, 2):
        assert is_characteristic(q, c)


# ----- max characteristic square -----

def test_max_square_diag3():
    r = max_characteristic_square(diagonal_form(3), 1)
    assert (r.value, r.achiever, r.bound_limited) == (-3, (1, 1, 1), False)


def test_max_square_rank1():
    r = max_characteristic_square(diagonal_form(1), 3)
    assert (r.value, r.achiever, r.bound_limited) == (-1, (1,), False)


def test_max_square_e8_flags_the_even_gap():
    r = max_characteristic_square(e8_form(), 2)
    assert r.value == 0
    assert r.achiever == (0,) * 8
    assert r.bound_limited


def test_max_square_diagonals_up_to_six():
    for rank in range(1, 7):
        r = max_characteristic_square(diagonal_form(rank), 1)
        assert r.value == -rank
        assert r.achiever == (1,) * rank
        assert not r.bound_limited


def test_max_square_rank_zero():
    r = max_characteristic_square(QuadraticForm(()), 1)
    assert (r.value, r.achiever, r.bound_limited) == (0, (), False)


# ----- diagonalization -----

def test_diagonalize_diag_is_identityish():
    basis = diagonalize(diagonal_form(2), 1)
    assert basis == ((1, 0), (0, 1))


def test_diagonalize_nontrivial_form():
    q = QuadraticForm(((-2, 1), (1, -1)))
    basis = diagonalize(q, 3)
    assert basis is not None
    for i, v in enumerate(basis):
        for j, w in enumerate(basis):
            assert q.pairing(v, w) == (-1 if i == j else 0)


def test_diagonalize_e8_not_found():
    assert diagonalize(e8_form(), 2) is None


def test_diagonalize_rank_guard():
    big = diagonal_form(9)
    with pytest.raises(GuardViolation):
        diagonalize(big, 1)


# ----- maximal-square class -----

def test_spinc_diag2():
    out = spinc_with_max_square(diagonal_form(2), 2)
    assert out.vector == (1, 1)
    assert out.square == -2


def test_spinc_diag1():
    assert spinc_with_max_square(diagonal_form(1), 1).vector == (1,)


def test_spinc_rank0():
    out = spinc_with_max_square(QuadraticForm(()), 1)
    assert out.vector == ()
    assert out.square == 0


def test_spinc_nontrivial_form_is_characteristic():
    q = QuadraticForm(((-2, 1), (1, -1)))
    out = spinc_with_max_square(q, 3)
    assert out.square == -2
    assert is_characteristic(q, out.vector)


def test_spinc_e8_not_found():
    assert spinc_with_max_square(e8_form(), 2) is None
