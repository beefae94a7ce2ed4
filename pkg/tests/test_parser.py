import numpy as np
import pytest

from gpilab.ncpoly import GenPoly
from gpilab.parser import ParseError, format_poly, parse_ast, parse_expr


def random_text(A, rng, depth=0, m=2):
    kind = rng.integers(0, 6 if depth < 3 else 3)
    if kind == 0:
        return ["X1", "X2", "X", "Y"][rng.integers(0, 4 if m >= 2 else 1)] if m >= 2 else "X"
    if kind == 1:
        return A.basis[rng.integers(0, A.dim)]
    if kind == 2:
        if rng.integers(0, 2):
            return str(int(rng.integers(0, 7)))
        return "[" + ",".join(str(int(c)) for c in rng.integers(0, A.p, A.dim)) + "]"
    if kind == 3:
        return random_text(A, rng, depth + 1, m) + "*" + random_text(A, rng, depth + 1, m)
    if kind == 4:
        op = "+" if rng.integers(0, 2) else "-"
        return "(" + random_text(A, rng, depth + 1, m) + op + random_text(A, rng, depth + 1, m) + ")"
    return "(" + random_text(A, rng, depth + 1, m) + ")^" + str(int(rng.integers(0, 3)))


@pytest.mark.parametrize("name", ["m2f3", "gf9"])
def test_round_trip_corpus(request, name):
    A = request.getfixturevalue(name)
    rng = np.random.default_rng(1)
    for _ in range(100):
        text = random_text(A, rng)
        G = parse_expr(text, A, 2)
        printed = str(G)
        again = parse_expr(printed, A, 2)
        assert again == G
        assert str(again) == printed


def test_spec_examples(m2f3, gf9):
    G = parse_expr("e11*X^2*e12 + 2*X", m2f3)
    assert G.degree == 2
    assert {len(w) for w in G.words} == {1, 2}
    H = parse_expr("(X1+X2)^3", gf9, 2)
    assert H.degree == 3 and len(H.words) == 8
    with pytest.raises(ParseError) as err:
        parse_expr("X^", m2f3)
    assert (err.value.line, err.value.column) == (1, 2)


def test_integers_are_scalars(m2f3):
    assert parse_expr("4", m2f3) == GenPoly.constant(m2f3.one)
    assert parse_expr("-X", m2f3) == parse_expr("2*X", m2f3)


def test_errors(m2f3):
    cases = {
        "X Y": "missing '\\*'",
        "e11*e99": "unknown basis name",
        "X*[1,2]": "needs 4 entries",
        "(X+1": "expected '\\)'",
        "X^-1": "non-negative",
        "x*X": "reserved",
        "X0": "numbered from X1",
        "X + $": "unexpected character",
    }
    for text, msg in cases.items():
        with pytest.raises(ParseError, match=msg):
            parse_expr(text, m2f3, 3)
    with pytest.raises(ValueError, match="variable"):
        parse_expr("X3", m2f3, 2)


def test_multiline_positions(m2f3):
    with pytest.raises(ParseError) as err:
        parse_expr("X +\n  e11 *", m2f3)
    assert err.value.line == 2


def test_template_mode(gf9):
    G = parse_expr("x^2*xinv", gf9, template=True)
    assert G.num_vars == 2
    assert format_poly(G, template=True) == "x*x*xinv"
    with pytest.raises(ParseError):
        parse_expr("X", gf9, template=True)


def test_ast_kinds():
    node = parse_ast("e11*X^2 + 3 - [1,0]")
    assert node.kind == "sum"
    assert [c.kind for c in node.children] == ["product", "int", "neg"]
    assert node.children[0].children[1].kind == "power"
    assert node.children[0].children[1].value == 2
