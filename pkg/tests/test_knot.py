import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swcalc.errors import GuardViolation
from swcalc.groupring import laurent, laurent_coeffs
from swcalc.knot import alexander_family, torus_knot, unknot, validate


def sympy_torus_oracle(p, q):
    """Independent construction by symbolic exact division."""
    import sympy

    t = sympy.symbols("t")
    num = sympy.Poly((t ** (p * q) - 1) * (t - 1), t)
    den = sympy.Poly((t ** p - 1) * (t ** q - 1), t)
    quo, rem = sympy.div(num, den, t)
    assert rem == 0
    shift = (p - 1) * (q - 1) // 2
    coeffs = {}
    for (exp,), coeff in sympy.Poly(quo, t).terms():
        coeffs[int(exp) - shift] = int(coeff)
    return coeffs


def test_trefoil_frozen_value():
    assert torus_knot(2, 3).coeffs() == {1: 1, 0: -1, -1: 1}


def test_cinquefoil_frozen_value():
    assert torus_knot(2, 5).coeffs() == {2: 1, 1: -1, 0: 1, -1: -1, -2: 1}


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (3, 4), (3, 5), (2, 7), (4, 5)])
def test_torus_knot_matches_division_oracle(p, q):
    assert torus_knot(p, q).coeffs() == sympy_torus_oracle(p, q)


def test_torus_knot_normalized_at_one():
    assert torus_knot(2, 3).poly.evaluate_at_one() == 1


def test_torus_knot_symmetric_in_p_q():
    for p, q in [(2, 3), (3, 5), (2, 7)]:
        assert torus_knot(p, q).poly == torus_knot(q, p).poly


def test_torus_knot_rejects_non_coprime():
    with pytest.raises(GuardViolation):
        torus_knot(2, 4)
    with pytest.raises(GuardViolation):
        torus_knot(1, 5)


def test_family_displayed_polynomial():
    assert alexander_family(1, 1).coeffs() == {0: 1, 1: -1, -1: -1, 2: 1, -2: 1}


def test_family_value_at_one():
    assert alexander_family(1, 1).poly.evaluate_at_one() == 1


def test_family_term_count():
    assert alexander_family(2, 1).term_count() == 9


@settings(max_examples=60)
@given(st.integers(1, 6), st.integers(1, 5))
def test_family_shape(d, n):
    fam = alexander_family(d, n)
    coeffs = fam.coeffs()
    assert len(coeffs) == 4 * d + 1
    assert all(abs(c) == 1 for c in coeffs.values())
    assert fam.poly.evaluate_at_one() == 1


def test_family_rejects_bad_params():
    with pytest.raises(GuardViolation):
        alexander_family(0, 1)
    with pytest.raises(GuardViolation):
        alexander_family(1, 0)


def test_validate_accepts_trefoil_shape():
    out = validate(laurent({1: 1, 0: -1, -1: 1}))
    assert out.coeffs() == {1: 1, 0: -1, -1: 1}


def test_validate_rejects_asymmetric():
    with pytest.raises(GuardViolation):
        validate(laurent({1: 1, 0: 1}))


def test_validate_normalizes_sign():
    out = validate(laurent({1: -1, 0: 1, -1: -1}))
    assert out.poly.evaluate_at_one() == 1
    assert out.coeffs() == {1: 1, 0: -1, -1: 1}


def test_validate_rejects_wrong_value_at_one():
    with pytest.raises(GuardViolation):
        validate(laurent({1: 1, 0: 1, -1: 1}))


def test_unknot_is_constant_one():
    assert laurent_coeffs(unknot().poly) == {0: 1}


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (3, 4)])
def test_constructors_pass_validate_unchanged(p, q):
    knot = torus_knot(p, q)
    assert validate(knot.poly).poly == knot.poly


def test_family_passes_validate_unchanged():
    fam = alexander_family(3, 2)
    assert validate(fam.poly).poly == fam.poly


def test_product_of_knots_is_a_knot():
    prod = torus_knot(2, 3) * alexander_family(1, 1)
    assert prod.poly.evaluate_at_one() == 1
    coeffs = prod.coeffs()
    assert all(coeffs[-e] == c for e, c in coeffs.items())
