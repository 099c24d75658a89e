from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swcalc.errors import GuardViolation
from swcalc.fixedpoint import (AngleTuple, TorusAutomorphism, apply_generator,
                               fixed_subtorus, invariant_locus, normalize,
                               solve_fixed_points)


def satisfies_congruences(theta, tup):
    """Independent check of the chained shift congruences mod 1."""
    angles = tup.angles
    k = len(angles)
    eqs = [(0 - (angles[0] + theta)) % 1 == 0]
    for i in range(k - 1):
        eqs.append((angles[i] - (angles[i + 1] + theta)) % 1 == 0)
    return all(eqs)


def test_solutions_k3():
    sols = solve_fixed_points(3)
    assert [str(theta) for theta, _ in sols] == ["0", "1/3", "2/3"]
    assert sols[1][1].angles == (Fraction(2, 3), Fraction(1, 3), Fraction(0))


def test_solution_k1():
    sols = solve_fixed_points(1)
    assert len(sols) == 1
    assert sols[0][1].angles == (Fraction(0),)


def test_solutions_k2():
    sols = solve_fixed_points(2)
    assert [tup.angles for _, tup in sols] == [
        (Fraction(0), Fraction(0)), (Fraction(1, 2), Fraction(0))]


def test_counts_up_to_fifty():
    for k in range(1, 51):
        assert len(solve_fixed_points(k)) == k
        assert len(invariant_locus(k)) == 1


def test_solutions_satisfy_congruences():
    for k in range(1, 13):
        for theta, tup in solve_fixed_points(k):
            assert satisfies_congruences(theta, tup)


def test_invariant_locus_is_theta_zero():
    locus = invariant_locus(5)
    assert len(locus) == 1
    assert locus[0][0] == 0


def test_invariant_locus_strict_subset():
    for k in range(2, 13):
        assert len(invariant_locus(k)) < len(solve_fixed_points(k))


def test_locus_ratio():
    for k in range(1, 13):
        assert len(invariant_locus(k)) / len(solve_fixed_points(k)) == 1 / k


# ----- generator action -----

def test_fixed_tuple_is_fixed_up_to_gauge():
    theta, tup = solve_fixed_points(3)[1]
    assert apply_generator(tup, theta, [0, 0, 0]) == tup


def test_identity_on_zero_tuple():
    zero = AngleTuple((Fraction(0),) * 4)
    assert apply_generator(zero, 0, [0, 0, 0, 0]) == zero


def test_offsets_must_balance():
    zero = AngleTuple((Fraction(0),) * 3)
    with pytest.raises(GuardViolation):
        apply_generator(zero, 0, [Fraction(1, 3), 0, 0])


def test_offset_count_checked():
    zero = AngleTuple((Fraction(0),) * 3)
    with pytest.raises(GuardViolation):
        apply_generator(zero, 0, [0, 0])


fractions_mod1 = st.integers(0, 11).flatmap(
    lambda num: st.integers(1, 12).map(lambda den: Fraction(num % den, den)))


@settings(max_examples=80)
@given(st.lists(fractions_mod1, min_size=3, max_size=3))
def test_generator_permutes_fixed_set(raw):
    k = 4
    offsets = raw + [-sum(raw) % 1]
    fixed = {tup for _, tup in solve_fixed_points(k)}
    for theta, tup in solve_fixed_points(k):
        image = apply_generator(tup, theta, offsets)
        assert image in fixed
    images = {apply_generator(tup, 0, offsets) for _, tup in solve_fixed_points(k)}
    assert images == fixed


def test_normalize_reduces_mod_one():
    out = normalize([Fraction(5, 4), Fraction(1, 2)])
    assert out.angles == (Fraction(3, 4), Fraction(0))


# ----- torus automorphisms -----

def test_identity_automorphism():
    aut = TorusAutomorphism(((1, 0, 0), (0, 1, 0), (0, 0, 1)), 1)
    out = fixed_subtorus(aut)
    assert out.dimension == 3
    assert out.basis == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_cyclic_permutation_matrix():
    for k in (2, 3, 5):
        rows = tuple(tuple(1 if j == (i + 1) % k else 0 for j in range(k))
                     for i in range(k))
        out = fixed_subtorus(TorusAutomorphism(rows, k))
        assert out.dimension == 1
        assert out.basis == ((1,) * k,)


def test_minus_identity():
    aut = TorusAutomorphism(((-1, 0), (0, -1)), 2)
    assert fixed_subtorus(aut).dimension == 0


def test_block_mix():
    rows = ((1, 0, 0), (0, 0, 1), (0, 1, 0))
    out = fixed_subtorus(TorusAutomorphism(rows, 2))
    assert out.dimension == 2


def test_wrong_order_rejected():
    with pytest.raises(GuardViolation):
        TorusAutomorphism(((0, 1), (1, 0)), 3)


def test_angle_tuple_normal_form_enforced():
    with pytest.raises(ValueError):
        AngleTuple((Fraction(1, 2), Fraction(1, 3)))
    with pytest.raises(ValueError):
        AngleTuple((Fraction(3, 2), Fraction(0)))
