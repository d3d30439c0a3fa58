from __future__ import annotations

from sympy.polys.domains import QQ

from coverforge.core.linalg import (
    IncrementalBasis,
    charpoly,
    determinant,
    echelon_polynomials,
    is_squarefree,
    rank,
    same_span,
    solve_affine,
)


def q(*values):
    return [QQ(v) for v in values]


def test_determinant_and_rank():
    assert determinant([q(1, 2), q(3, 4)]) == -2
    assert determinant([]) == 1
    assert rank([q(1, 2), q(2, 4)], 2) == 1


def test_charpoly_leading_coefficient_first():
    assert charpoly([q(2, 0), q(0, 3)]) == q(1, -5, 6)


def test_squarefree():
    assert not is_squarefree(q(1, -2, 1))
    assert is_squarefree(q(1, 0, -1))
    assert is_squarefree(q(5))


def test_solve_affine():
    assert solve_affine([q(1, 1)], q(2), 2) == q(2, 0)
    assert solve_affine([q(1, 1), q(1, 1)], q(1, 2), 2) is None


def test_same_span_ignores_basis_choice(xy):
    a = [xy.parse("x^2 + y^2"), xy.parse("x^2 - y^2")]
    b = [xy.parse("x^2"), xy.parse("2*y^2")]
    assert same_span(a, b)
    assert not same_span(a, [xy.parse("x^2")])


def test_echelon_is_monic_and_drops_dependents(xy):
    rows = echelon_polynomials([xy.parse("2*x + 2*y"), xy.parse("x + y"), xy.zero])
    assert rows == [xy.parse("x + y")]


def test_incremental_basis_reports_independence(xy):
    key = xy.order.monomial_order()
    span = IncrementalBasis()
    assert span.add(dict(xy.parse("x + y").rep), key)
    assert not span.add(dict(xy.parse("3*x + 3*y").rep), key)
    assert span.add(dict(xy.parse("x").rep), key)
    assert len(span) == 2
