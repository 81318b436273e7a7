import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conequant.cone import euler_h
from conequant.dsl import BinOp, Bracket, Neg, Num, ParseError, Pow, Sym, format_expr, parse_expr, parse_operator, tokenize
from conequant.scalar import I, QI, as_qi
from conequant.weyl import WeylElement

from strategies import weyl_elements


def test_ast_shape():
    node = parse_expr("z1*d1 + 1/2", 4)
    assert node == BinOp("+", BinOp("*", Sym("z", 0), Sym("d", 0)), Num(as_qi(Fraction(1, 2))))


def test_precedence():
    assert parse_expr("z1 + z2*z3^2", 3) == BinOp("+", Sym("z", 0), BinOp("*", Sym("z", 1), Pow(Sym("z", 2), 2)))
    assert parse_expr("-z1^2", 1) == Neg(Pow(Sym("z", 0), 2))
    assert parse_expr("z1 - z2 - z3", 3) == BinOp("-", BinOp("-", Sym("z", 0), Sym("z", 1)), Sym("z", 2))
    assert parse_expr("[z1, d1]", 1) == Bracket(Sym("z", 0), Sym("d", 0))


def test_elaboration():
    assert parse_operator("z1*d1 + 1/2", 4) == WeylElement.z(4, 0) * WeylElement.d(4, 0) + WeylElement.scalar(4, Fraction(1, 2))
    assert parse_operator("[d1, z1]", 4) == WeylElement.one(4)
    assert parse_operator("[d1, z1^3]", 1) == WeylElement.z(1, 0) ** 2 * 3
    assert parse_operator("d1*z1", 1) == WeylElement.z(1, 0) * WeylElement.d(1, 0) + WeylElement.one(1)
    assert parse_operator("(1 + i)^2", 1) == WeylElement.scalar(1, QI(0, 2))


def test_format_examples():
    assert format_expr(euler_h(4)) == "2*z1*d1 + 2*z2*d2 + 2*z3*d3 + 2*z4*d4 + 2"
    assert format_expr(WeylElement.zero(4)) == "0"
    assert format_expr(WeylElement.z(4, 3).scale(I)) == "i*z4"
    assert format_expr(WeylElement.z(2, 0).scale(QI(Fraction(1, 2), -1))) == "(1/2 - i)*z1"
    assert format_expr(WeylElement.d(2, 1).scale(-3) + WeylElement.scalar(2, -1)) == "-3*d2 - 1"


def _random_expr(rng, n, depth=0):
    # random well-formed text exercising every construct
    if depth > 2 or rng.random() < 0.3:
        kind = rng.choice(["z", "d", "num", "frac", "i"])
        if kind in "zd":
            return f"{kind}{rng.randint(1, n)}"
        if kind == "num":
            return str(rng.randint(0, 9))
        if kind == "frac":
            return f"{rng.randint(0, 9)}/{rng.randint(1, 9)}"
        return "i"
    kind = rng.choice(["+", "-", "*", "neg", "pow", "br", "paren"])
    a = _random_expr(rng, n, depth + 1)
    if kind == "neg":
        return f"-{a}"
    if kind == "pow":
        return f"({a})^{rng.randint(0, 3)}"
    if kind == "paren":
        return f"({a})"
    b = _random_expr(rng, n, depth + 1)
    if kind == "br":
        return f"[{a}, {b}]"
    return f"{a} {kind} {b}"


def test_round_trip_100_cases():
    rng = random.Random(2024)
    for _ in range(100):
        n = rng.randint(1, 4)
        text = _random_expr(rng, n)
        e = parse_operator(text, n)
        assert parse_operator(format_expr(e), n) == e, text


@given(weyl_elements(n=3, max_terms=5, top=3))
def test_round_trip_property(e):
    assert parse_operator(format_expr(e), 3) == e


@given(weyl_elements(n=2, max_terms=4))
def test_format_deterministic(e):
    copy = WeylElement(2, dict(reversed(list(e.terms.items()))))
    assert format_expr(copy) == format_expr(e)


# malformed input -> 0-based position of the offending character
ERRORS = [
    ("z5*d1", 4, 0),  # index out of range
    ("z1 +", 4, 4),  # missing operand at end
    ("x1", 4, 0),  # unknown symbol
    ("(z1", 4, 3),  # unclosed paren
    ("[z1 z2]", 4, 4),  # missing comma
    ("z1^a", 4, 3),  # exponent must be an integer
    ("3/0", 4, 2),  # zero denominator
    ("z1 $ 2", 4, 3),  # stray character
    ("", 4, 0),  # empty input
    ("d1 d2", 4, 3),  # juxtaposition is not a product
    ("[z1,]", 4, 4),  # empty bracket operand
    ("z1^-1", 4, 3),  # negative exponent
    ("d0", 4, 0),  # indices are 1-based
    ("z1)", 4, 2),  # unbalanced close paren
]


@pytest.mark.parametrize("text, n, pos", ERRORS)
def test_error_positions(text, n, pos):
    with pytest.raises(ParseError) as info:
        parse_operator(text, n)
    assert info.value.position == pos
    assert str(info.value).endswith(f"at position {pos}")


def test_n_must_be_positive():
    with pytest.raises(ValueError):
        parse_expr("1", 0)


def test_tokenize_positions():
    assert tokenize(" z1 *d2") == [("sym", "z1", 1), ("op", "*", 4), ("sym", "d2", 5), ("end", "", 7)]
