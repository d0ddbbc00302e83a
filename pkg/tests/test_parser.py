import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.services.expression_service import (
    NSYMM,
    QSYMM,
    SCALAR,
    SYMM,
    BinOp,
    Bracket,
    Call,
    ExpressionSyntaxError,
    ExpressionTypeError,
    Gen,
    Int,
    Neg,
    ParsedExpression,
    parse,
    to_text,
)


# ---------------------------------------------------------
# grammar
# ---------------------------------------------------------
def test_brackets_and_generators():
    assert parse("[3]*[1,2]").node == BinOp("*", Bracket((3,)), Bracket((1, 2)))
    assert parse("Z{12}").node == Gen("Z", 12)
    assert parse("Q'3").node == Gen("Q'", 3)
    assert parse("[]").node == Bracket(())


def test_juxtaposition_is_multiplication():
    assert parse("2Z1 Z2").node == BinOp("*", BinOp("*", Int(2), Gen("Z", 1)), Gen("Z", 2))


def test_precedence_and_associativity():
    node = parse("Z1 - Z2 - Z3*Z1").node
    expected = BinOp("-", BinOp("-", Gen("Z", 1), Gen("Z", 2)), BinOp("*", Gen("Z", 3), Gen("Z", 1)))
    assert node == expected
    assert parse("-Z1*Z2").node == BinOp("*", Neg(Gen("Z", 1)), Gen("Z", 2))


def test_diamond_spellings_agree():
    assert parse("Z1 <> Z2").node == parse("diamond(Z1, Z2)").node


def test_ring_annotation():
    parsed = parse("steenrod(1, [1]) @Fp:2")
    assert parsed.ring == "Fp:2"
    assert parsed.node == Call("steenrod", (Int(1), Bracket((1,))))
    assert parse("Z1 @ Q").ring == "Q"
    assert parse("Z1").ring is None


def test_inferred_algebras():
    assert parse("Z1*Z2").algebra == NSYMM
    assert parse("[1,2] + 3[2]").algebra == QSYMM
    assert parse("abelianize(Z1 Z2)").algebra == SYMM
    assert parse("pair([1,2], Z1*Z2)").algebra == SCALAR
    assert parse("coproduct([1,2])").algebra == "tensor:qsymm"
    assert parse("c1*c2 - v2").algebra == SYMM


def test_canonical_text():
    assert to_text(parse("2Z1 Z2")) == "2*Z1*Z2"
    assert to_text(parse("Z1 <> (Z2 - Z1)")) == "diamond(Z1, Z2 - Z1)"
    assert to_text(parse("(Z1 + Z2)*Z3 @Z")) == "(Z1 + Z2)*Z3 @Z"
    assert to_text(parse("Z1 - (Z2 - Z3)")) == "Z1 - (Z2 - Z3)"


# ---------------------------------------------------------
# errors
# ---------------------------------------------------------
@pytest.mark.parametrize(
    "text, position",
    [
        ("[1,0]", 3),
        ("Z1 + ", 5),
        ("foo(Z1)", 0),
        ("Z1 # 2", 3),
        ("Z0", 0),
        ("pair([1])", 0),
        ("(Z1", 3),
        ("Z1 Z2)", 5),
    ],
)
def test_syntax_error_positions(text, position):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse(text)
    assert info.value.position == position
    assert info.value.caret().splitlines()[1] == " " * position + "^"


@pytest.mark.parametrize(
    "text",
    ["[1] + Z1", "diamond([1], Z1)", "steenrod(Z1, [1])", "steenrod(1, Z1)", "abelianize([1])", "pair(Z1, [1])"],
)
def test_type_errors(text):
    with pytest.raises(ExpressionTypeError):
        parse(text)


# ---------------------------------------------------------
# printer / parser agreement
# ---------------------------------------------------------
gens = st.integers(min_value=1, max_value=12).map(lambda i: Gen("Z", i))


def _grow(children):
    return st.one_of(
        children.map(Neg),
        st.tuples(st.sampled_from(["+", "-", "*", "<>"]), children, children).map(lambda t: BinOp(*t)),
        st.tuples(st.integers(min_value=0, max_value=9), children).map(lambda t: BinOp("*", Int(t[0]), t[1])),
        children.map(lambda c: Call("antipode", (c,))),
    )


nsymm_nodes = st.recursive(gens, _grow, max_leaves=8)


@given(nsymm_nodes, st.sampled_from([None, "Z", "Fp:3"]))
def test_printed_text_parses_back(node, ring):
    parsed = ParsedExpression(node, ring)
    assert parse(to_text(parsed)) == parsed
