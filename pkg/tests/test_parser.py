from __future__ import annotations

import pytest
from sympy.polys.domains import QQ

from coverforge.core.errors import ParseError
from coverforge.core.parser import (
    load_problem,
    parse_point,
    parse_polynomial,
    parse_polynomial_list,
    parse_problem,
    tokenize,
)

TRIPLE = """\
# comment line
ring z1 z2 : degrevlex
q0 = z1^2
q1 = z1*z2
q2 = z2^2
tracefree = c00 + c11; c10 + c21
syzygy = 0, -z2, z1
syzygy = z2, -z1, 0
"""


def test_tokenize_columns_are_one_based():
    tokens = tokenize("x + 12")
    assert [(t.kind, t.text, t.column) for t in tokens] == [
        ("NAME", "x", 1), ("OP", "+", 3), ("NUMBER", "12", 5), ("END", "", 7),
    ]


def test_parse_nested_expression(xy):
    f = parse_polynomial("2*(x + y)^2 - 4*x*y", xy)
    assert f == xy.parse("2*x^2 + 2*y^2")


def test_parse_rational_coefficients(xy):
    f = parse_polynomial("-1/2*x + 3/4", xy)
    assert f.coefficient((1, 0)) == QQ(-1, 2)
    assert f.constant_term == QQ(3, 4)


def test_parse_leading_sign(xy):
    assert parse_polynomial("-x^2", xy) == -(xy.gen("x") ** 2)


@pytest.mark.parametrize(
    "text, column",
    [
        ("x^", 2),
        ("x + q", 5),
        ("x $ y", 3),
        ("(x + y", 7),
        ("1/0", 3),
        ("x y", 3),
    ],
)
def test_parse_errors_carry_columns(xy, text, column):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text, xy)
    assert info.value.column == column


def test_unknown_variable_message(xy):
    with pytest.raises(ParseError, match="unknown variable 'q'"):
        parse_polynomial("x + q", xy)


def test_parse_polynomial_list(xy):
    polys = parse_polynomial_list("x; y, x*y", xy)
    assert polys == [xy.gen("x"), xy.gen("y"), xy.parse("x*y")]


def test_triple_problem_file():
    problem = parse_problem(TRIPLE, source="triple.cover")
    assert problem.kind == "cover"
    assert problem.explicit_order
    cover = problem.to_cover_problem()
    assert cover.m == 3
    assert cover.fiber_vars == ("z1", "z2")
    assert [str(f) for f in cover.trace_free] == ["c00 + c11", "c10 + c21"]
    assert len(cover.syzygies) == 2
    assert cover.name == "triple"


def test_plain_ideal_file():
    problem = parse_problem("ring t x : lex\nfx = x - t\nfy = t^2\n")
    assert problem.kind == "ideal"
    assert problem.ring.order.kind == "lex"
    assert [name for name, _ in problem.generators] == ["fx", "fy"]


def test_ring_line_without_order_defaults_to_degrevlex():
    problem = parse_problem("ring x y\nf = x*y\n")
    assert problem.ring.order.kind == "degrevlex"
    assert not problem.explicit_order


def test_dangling_caret_in_file_points_at_the_caret():
    with pytest.raises(ParseError) as info:
        parse_problem("ring z1 z2\nq0 = z1^\n")
    assert (info.value.line, info.value.column) == (2, 8)
    assert str(info.value).startswith("line 2, column 8:")


@pytest.mark.parametrize(
    "text, message",
    [
        ("q0 = x\n", "'ring' declaration must come first"),
        ("ring x\nring y\nq0 = x\n", "ring declared twice"),
        ("ring x\nq0 = x\nq0 = x^2\n", "already defined on line 2"),
        ("ring x\n", "no generators"),
        ("", "no 'ring' declaration"),
        ("ring x\nq0 x\n", "expected 'name = polynomial'"),
        ("ring x : revlex\nq0 = x\n", "unknown term order"),
    ],
)
def test_problem_file_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_problem(text)


def test_cover_generators_must_be_consecutive():
    problem = parse_problem("ring x y\nq0 = x^2\nq2 = y^2\n")
    with pytest.raises(ParseError, match="q0..q1"):
        problem.to_cover_problem()


def test_bundled_problem_files_parse(problems_dir):
    triple = load_problem(problems_dir / "triple.cover").to_cover_problem()
    assert triple.m == 3 and len(triple.trace_free) == 2
    deg6 = load_problem(problems_dir / "deg6.cover").to_cover_problem()
    assert deg6.m == 9 and len(deg6.trace_free) == 4
    assert deg6.q[4] == deg6.fiber_ring.parse("1/2*z1*w2 + 1/2*z2*w1")
    twisted = load_problem(problems_dir / "twisted.ideal")
    assert twisted.kind == "ideal"


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        load_problem(tmp_path / "absent.cover")


def test_parse_point_named_and_positional():
    assert parse_point("c01=1, c11=-2/3", ["c01", "c11"]) == {"c01": QQ(1), "c11": QQ(-2, 3)}
    assert parse_point("1,2", ["a", "b"]) == {"a": QQ(1), "b": QQ(2)}
    with pytest.raises(ParseError, match="expected 2 values"):
        parse_point("1", ["a", "b"])
    with pytest.raises(ParseError):
        parse_point("a=x", ["a"])
