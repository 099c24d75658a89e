import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swcalc.errors import ExprSyntaxError, GuardViolation
from swcalc.expressions import (Blowup, Builtin, Catalog, ConnSum, KnotRef,
                                KnotSurgery, LogTransform, Multiple, Reverse,
                                eval_expr, expression_factors, parse, render)
from swcalc.manifold import homeo_type, mod2_basic_class_count


def test_parse_sum_with_multiplicity():
    tree = parse("2*E(2) # S2xS2")
    assert tree == ConnSum((Multiple(2, Builtin("E", 2)), Builtin("S2xS2")))


def test_parse_knot_surgery_node():
    tree = parse("knot_surgery(E(2), torus(2,3))")
    assert tree == KnotSurgery(Builtin("E", 2), KnotRef("torus", (2, 3)))


def test_parse_whitespace_insensitive():
    assert parse(" 2 * E( 2 )#S2xS2 ") == parse("2*E(2) # S2xS2")


def test_parse_e1_ok_eval_guarded():
    tree = parse("E(1)")
    with pytest.raises(GuardViolation) as err:
        eval_expr(tree)
    assert err.value.requirement == "b2+ > 1"


def test_parse_reverse_and_nested():
    tree = parse("~K3 # blowup(E(2),2)")
    assert tree == ConnSum((Reverse(Builtin("K3")), Blowup(Builtin("E", 2), 2)))


def test_parse_logtx():
    assert parse("logtx(2,3)") == LogTransform(2, 3)


def test_parse_error_position():
    with pytest.raises(ExprSyntaxError) as err:
        parse("E(2) # # S2xS2")
    assert err.value.position == 7


def test_parse_unknown_name_suggests():
    with pytest.raises(ExprSyntaxError) as err:
        parse("S2xS1")
    assert "S2xS2" in err.value.suggestions


def test_parse_unknown_knot_suggests():
    with pytest.raises(ExprSyntaxError) as err:
        eval_expr(parse("knot_surgery(E(2), torsu(2,3))"))
    assert "torus" in err.value.suggestions


def test_parse_zero_multiplicity_rejected():
    with pytest.raises(ExprSyntaxError):
        parse("0*E(2)")


def test_parse_trailing_garbage():
    with pytest.raises(ExprSyntaxError):
        parse("E(2) )")


# ----- evaluation -----

def test_eval_family_target():
    m = eval_expr(parse("4*E(2) # 1*S2xS2"))
    h = homeo_type(m)
    assert (h.parity, h.n, h.m) == ("even", 1, 4)


def test_eval_blowup_count():
    m = eval_expr(parse("blowup(E(2),2)"))
    assert mod2_basic_class_count(m) == 4


def test_eval_s4():
    assert eval_expr(parse("S4")).chi == 2


def test_eval_knot_surgery_with_named_knot():
    m = eval_expr(parse("knot_surgery(E(2), trefoil)"))
    assert mod2_basic_class_count(m) == 3


def test_eval_hat_atom():
    m = eval_expr(parse("hat(2)"))
    assert m.chi == 2 and m.torsion_h1 == (2,)


def test_eval_permutation_invariance():
    exprs = ["E(3) # S2xS2 # CP2", "CP2 # E(3) # S2xS2", "S2xS2 # CP2 # E(3)"]
    results = [eval_expr(parse(s)) for s in exprs]
    fps = {m.fingerprint for m in results}
    assert len(fps) == 1
    counts = {mod2_basic_class_count(m) for m in results}
    assert len(counts) == 1


def test_expression_factors_expand_multiples():
    factors = expression_factors(parse("2*E(2) # S2xS2"))
    assert len(factors) == 3


# ----- rendering round trip -----

names = st.sampled_from(["S4", "CP2", "CP2bar", "S2xS2", "K3", "S1xS3"])
knotrefs = st.one_of(
    st.just(KnotRef("unknot")),
    st.builds(KnotRef, st.just("torus"), st.just((2, 3))),
    st.builds(KnotRef, st.just("family"),
              st.tuples(st.integers(1, 3), st.integers(1, 3))),
)
leaf_atoms = st.one_of(
    st.builds(Builtin, names, st.none()),
    st.builds(Builtin, st.just("E"), st.integers(2, 5)),
    st.builds(Builtin, st.just("hat"), st.integers(2, 5)),
    st.builds(LogTransform, st.sampled_from([2, 4]), st.integers(1, 4)),
)


@st.composite
def atom_trees(draw, depth):
    # shapes the grammar allows inside an atom position
    choices = ["leaf"] if depth >= 2 else ["leaf", "reverse", "blowup", "knot"]
    kind = draw(st.sampled_from(choices))
    if kind == "leaf":
        return draw(leaf_atoms)
    if kind == "reverse":
        return Reverse(draw(atom_trees(depth + 1)))
    if kind == "blowup":
        return Blowup(draw(expr_trees(depth + 1)), draw(st.integers(1, 3)))
    return KnotSurgery(draw(expr_trees(depth + 1)), draw(knotrefs))


@st.composite
def term_trees(draw, depth):
    atom = draw(atom_trees(depth))
    if draw(st.booleans()):
        return Multiple(draw(st.integers(2, 4)), atom)
    return atom


@st.composite
def expr_trees(draw, depth=0):
    count = draw(st.integers(1, 3)) if depth < 2 else 1
    terms = [draw(term_trees(depth)) for _ in range(count)]
    return terms[0] if count == 1 else ConnSum(tuple(terms))


@settings(max_examples=150)
@given(expr_trees())
def test_render_parse_round_trip(tree):
    text = render(tree)
    once = parse(text)
    assert parse(render(once)) == once


# ----- catalog files -----

def test_catalog_file_round_trip(tmp_path):
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps({
        "knots": {
            "t25": "torus(2,5)",
            "fig8": {"coeffs": {"-1": -1, "0": 3, "1": -1}},
        },
        "manifolds": {"X": "knot_surgery(E(2), t25)"},
    }))
    catalog = Catalog.load(path)
    assert catalog.knots["t25"].coeffs() == {2: 1, 1: -1, 0: 1, -1: -1, -2: 1}
    assert catalog.knots["fig8"].coeffs() == {-1: -1, 0: 3, 1: -1}
    m = eval_expr(parse("X # S2xS2", catalog), catalog)
    assert m.b2_plus == 4


def test_catalog_self_reference_rejected(tmp_path):
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps({"manifolds": {"X": "X # S4"}}))
    catalog = Catalog.load(path)
    with pytest.raises(GuardViolation):
        eval_expr(parse("X", catalog), catalog)


def test_default_catalog_has_trefoil():
    catalog = Catalog()
    assert "trefoil" in catalog.knots
    assert catalog.knots["unknot"].coeffs() == {0: 1}
