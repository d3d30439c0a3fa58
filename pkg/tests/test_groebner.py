from __future__ import annotations

import pytest

from coverforge.core.errors import ContextError, UnsupportedError
from coverforge.core.groebner import (
    Ideal,
    buchberger,
    eliminate,
    ideal_equal,
    ideal_witness,
    initial_ideal,
    is_groebner,
    is_reduced,
    min_generators,
    multiplication_matrix,
    normal_form,
    quotient_dimension,
    s_polynomial,
    standard_monomials,
    trace,
)
from coverforge.core.polyring import Ring


@pytest.fixture
def twisted() -> Ideal:
    ring = Ring(("t", "x", "y", "z"), "lex")
    return Ideal(ring, [ring.parse(s) for s in ("x - t", "y - t^2", "z - t^3")])


def test_twisted_cubic_lex_basis(twisted):
    basis = buchberger(twisted)
    ring = twisted.ring
    expected = {ring.parse(s) for s in ("t - x", "x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2")}
    assert set(basis.elements) == expected
    assert basis.elements[0] == ring.parse("t - x")
    assert is_reduced(list(basis))


def test_basis_is_sorted_descending(twisted):
    basis = buchberger(twisted)
    key = twisted.ring.order.monomial_order()
    leads = [key(m) for m in basis.leading_monomials()]
    assert leads == sorted(leads, reverse=True)


def test_normal_form_decides_membership(twisted):
    basis = twisted.groebner()
    ring = twisted.ring
    assert normal_form(ring.parse("t^3 - z"), basis).is_zero
    assert ring.parse("x*z - y^2") in twisted
    assert normal_form(ring.parse("t + 1"), basis) == ring.parse("x + 1")


def test_normal_form_with_monomial_ideal(xy):
    basis = buchberger([xy.parse("x^2"), xy.parse("y^2")], xy)
    assert normal_form(xy.parse("x^2*y + x*y + 1"), basis) == xy.parse("x*y + 1")


def test_normal_form_ring_mismatch(xy, twisted):
    with pytest.raises(ContextError):
        normal_form(xy.gen("x"), twisted.groebner())


def test_unit_ideal(xy):
    basis = buchberger([xy.parse("x"), xy.parse("x - 1")], xy)
    assert basis.is_unit
    assert basis.elements == (xy.one,)
    assert standard_monomials(basis).dimension == 0


def test_is_groebner_detects_missing_s_polynomial(xy):
    assert not is_groebner([xy.parse("x^2 + y"), xy.parse("x*y")])
    assert is_groebner([xy.parse("x^2"), xy.parse("y^2")])


def test_s_polynomials_of_a_basis_reduce_to_zero(xy, twisted):
    assert s_polynomial(xy.parse("x^2 + y"), xy.parse("x*y")) == xy.parse("y^2")
    basis = twisted.groebner()
    elements = list(basis)
    for i, f in enumerate(elements):
        for g in elements[i + 1:]:
            assert normal_form(s_polynomial(f, g), basis).is_zero


def test_is_reduced_requires_monic(xy):
    assert not is_reduced([xy.parse("2*x")])
    assert is_reduced([xy.parse("x")])


def test_degree_bound_needs_homogeneous_input(xy):
    with pytest.raises(UnsupportedError):
        buchberger([xy.parse("x^2 + y")], xy, degree_bound=2)


def test_degree_bound_truncates(xyz):
    gens = [xyz.parse("x^2 - y*z"), xyz.parse("x*y - z^2")]
    bounded = buchberger(gens, xyz, degree_bound=2)
    full = buchberger(gens, xyz)
    assert bounded.truncated
    assert [g for g in full if g.degree() <= 2] == list(bounded)


def test_min_generators_drops_redundant(xy):
    gens = [xy.parse("x^2"), xy.parse("x*y"), xy.parse("x^3"), xy.parse("x^2 + x*y")]
    assert min_generators(gens) == [xy.parse("x^2"), xy.parse("x*y")]
    with pytest.raises(UnsupportedError):
        min_generators([xy.parse("x + 1")])


def test_ideal_equal_same_degree_uses_span(xy):
    left = Ideal(xy, [xy.parse("x^2"), xy.parse("y^2")])
    right = Ideal(xy, [xy.parse("x^2 + y^2"), xy.parse("x^2 - y^2")])
    assert ideal_equal(left, right)


def test_ideal_witness(xy):
    left = Ideal(xy, [xy.parse("x"), xy.parse("y")])
    right = Ideal(xy, [xy.parse("x")])
    assert ideal_witness(left, right) == ("left", xy.parse("y"))
    assert not ideal_equal(left, right)
    assert ideal_witness(right, right) is None


def test_ideal_equal_zero_ideals(xy):
    assert ideal_equal(Ideal(xy), Ideal(xy, [xy.zero]))
    assert not ideal_equal(Ideal(xy), Ideal(xy, [xy.gen("x")]))


def test_eliminate_twisted_cubic(twisted):
    projected = eliminate(twisted, ["t"])
    ring = Ring(("x", "y", "z"), "lex")
    assert projected.ring == ring
    assert ideal_equal(projected, Ideal(ring, [ring.parse("y - x^2"), ring.parse("z - x^3")]))
    for g in projected:
        assert "t" not in g.variables()


def test_eliminate_rejects_unknown_variables(twisted):
    with pytest.raises(ContextError):
        eliminate(twisted, ["s"])


def test_initial_ideal_takes_top_degree_parts(xy):
    ideal = Ideal(xy, [xy.parse("x^2 - 1"), xy.parse("y^2 - x")])
    init = initial_ideal(ideal)
    assert ideal_equal(init, Ideal(xy, [xy.parse("x^2"), xy.parse("y^2")]))


def test_standard_monomials_and_traces():
    ring = Ring(("x",))
    basis = buchberger([ring.parse("x^2 - 2")], ring)
    sm = standard_monomials(basis)
    assert sm.finite and set(sm.monomials) == {(0,), (1,)}
    assert trace(basis, ring.gen("x")) == 0
    assert trace(basis, ring.parse("x^2")) == 4
    assert trace(basis, ring.one) == 2
    matrix = multiplication_matrix(basis, ring.gen("x"), sm.monomials)
    assert matrix == [[0, 2], [1, 0]]


def test_positive_dimensional_quotient(xy):
    basis = buchberger([xy.parse("x^2")], xy)
    sm = standard_monomials(basis)
    assert not sm.finite and sm.dimension is None
    with pytest.raises(UnsupportedError):
        trace(basis, xy.gen("x"))


def test_quotient_dimension_of_three_points():
    ring = Ring(("z", "w"))
    ideal = Ideal(ring, [ring.parse("z^2 - w"), ring.parse("z*w - 1"), ring.parse("w^2 - z")])
    assert quotient_dimension(ideal) == 3


def test_ideal_with_order_changes_basis(twisted):
    grevlex = twisted.with_order("degrevlex")
    assert grevlex.ring.order.kind == "degrevlex"
    assert ideal_equal(Ideal(grevlex.ring, list(buchberger(grevlex))), grevlex)
