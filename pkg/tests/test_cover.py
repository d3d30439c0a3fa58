from __future__ import annotations

import random

import pytest
from sympy.polys.domains import QQ

from coverforge.catalog.base import random_rational
from coverforge.catalog.triple_cover import (
    EXPECTED_D,
    RENAMING,
    parameter_ring,
    renaming,
    triple_cover_problem,
    triple_cover_relations,
)
from coverforge.core.cover import (
    CoverProblem,
    build_system,
    c_names,
    cover_relations,
    monomial_trace_forms,
    verify_fiber,
)
from coverforge.core.errors import HypothesisViolation, PreconditionError
from coverforge.core.groebner import Ideal, buchberger, ideal_equal, normal_form
from coverforge.core.polyring import Ring, Substitution


@pytest.fixture
def plane() -> Ring:
    return Ring(("z1", "z2"))


@pytest.fixture(scope="module")
def triple():
    return triple_cover_relations()


def test_c_names_use_separator_past_nine():
    assert c_names(2, 2) == ["c00", "c01", "c10", "c11"]
    assert c_names(11, 1)[-1] == "c10_0"


def test_monomial_trace_forms_for_the_triple_cover(plane):
    z1, z2 = plane.gens()
    problem = CoverProblem.from_ring(plane, [z1 ** 2, z1 * z2, z2 ** 2])
    forms = monomial_trace_forms(problem)
    assert [str(f) for f in forms] == ["c00 + c11", "c10 + c21"]


def test_monomial_trace_forms_need_monomials(plane):
    z1, z2 = plane.gens()
    problem = CoverProblem.from_ring(plane, [z1 ** 2 + z2 ** 2, z1 * z2, z2 ** 2])
    with pytest.raises(HypothesisViolation):
        monomial_trace_forms(problem)


def test_system_has_one_column_per_syzygy():
    system = build_system(triple_cover_problem())
    assert system.l.shape == (3, 2)
    assert system.E.shape == (1, 2)
    assert system.layout.n_names == ["n00", "n01", "n02", "n10", "n11", "n12"]
    assert system.layout.z0 == "z0"


def test_triple_cover_free_parameters(triple):
    assert set(triple.free_c) == set(RENAMING)
    assert len(triple.linear_relations) == 2
    assert triple.quadratic_relations == ()
    assert triple.cubics_ok


def test_triple_cover_constant_terms(triple):
    params = parameter_ring()
    to_params = renaming(triple)
    displayed = [-to_params(d) for d in triple.D_vector()]
    assert displayed == [params.parse(t) for t in EXPECTED_D]


def test_family_vanishes_against_lifted_syzygies(triple):
    family = triple.family()
    lifted = triple.lifted_syzygies()
    for k in range(lifted.cols):
        total = family[0].ring.zero
        for i, f in enumerate(family):
            total = total + f * lifted[i, k]
        assert total.is_zero


def test_complete_point_fills_pivots(triple):
    point = triple.complete_point({name: 1 for name in triple.free_c})
    assert set(point) == set(triple.layout.c_names)
    for g in triple.linear_relations:
        assert g.evaluate(point) == 0


def test_complete_point_rejects_inconsistent_values(triple):
    pivot = next(iter(triple.c_subst))
    with pytest.raises(PreconditionError):
        triple.complete_point({pivot: QQ(7), **{name: 0 for name in triple.free_c}})


def test_fibers_of_the_triple_cover_are_flat(triple):
    rng = random.Random(11)
    for _ in range(3):
        point = {name: random_rational(rng) for name in triple.free_c}
        report = verify_fiber(triple.problem, triple, point)
        assert report.ok
        assert report.dimension == 3
        assert report.betti == [1, 3, 2]


def test_problem_without_supplied_syzygies_agrees(plane):
    z1, z2 = plane.gens()
    problem = CoverProblem.from_ring(plane, [z1 ** 2, z1 * z2, z2 ** 2], name="plain")
    problem = problem.with_trace_free(monomial_trace_forms(problem))
    rel = cover_relations(problem)
    assert len(rel.free_c) == 4
    assert rel.cubics_ok


def test_non_quadric_is_rejected(plane):
    z1, z2 = plane.gens()
    with pytest.raises(HypothesisViolation):
        cover_relations(CoverProblem.from_ring(plane, [z1 ** 3, z2 ** 2]))


def test_non_minimal_generators_are_rejected(plane):
    z1, z2 = plane.gens()
    q = [z1 ** 2, z1 * z2, z1 ** 2 + z1 * z2, z2 ** 2]
    with pytest.raises(HypothesisViolation):
        cover_relations(CoverProblem.from_ring(plane, q))


def test_incomplete_supplied_syzygies_are_rejected(plane):
    z1, z2 = plane.gens()
    zero = plane.zero
    problem = CoverProblem.from_ring(
        plane,
        [z1 ** 2, z1 * z2, z2 ** 2],
        syzygies=[[z2, -z1, zero], [z2 * 2, -z1 * 2, zero]],
    )
    with pytest.raises(HypothesisViolation):
        cover_relations(problem)


def test_trace_free_forms_must_live_in_the_c_unknowns(plane):
    z1, z2 = plane.gens()
    problem = CoverProblem.from_ring(plane, [z1 ** 2, z1 * z2, z2 ** 2])
    foreign = Ring(("c99",)).gen("c99")
    with pytest.raises(HypothesisViolation):
        problem.with_trace_free([foreign])


def test_empty_problem_is_rejected(plane):
    with pytest.raises(HypothesisViolation):
        CoverProblem.from_ring(plane, [])


def test_permuting_generators_renames_the_relations(plane):
    z1, z2 = plane.gens()

    def solve(q):
        problem = CoverProblem.from_ring(plane, q, name="order")
        return cover_relations(problem.with_trace_free(monomial_trace_forms(problem)))

    rel = solve([z1 ** 2, z1 * z2, z2 ** 2])
    swapped = solve([z2 ** 2, z1 * z2, z1 ** 2])
    ring = rel.c_ring
    flip = Substitution.from_mapping(
        swapped.c_ring, ring, {f"c{i}{j}": f"c{2 - i}{j}" for i in range(3) for j in range(2)}
    )
    relations = [*rel.linear_relations, *rel.quadratic_relations]
    renamed = [flip(g) for g in (*swapped.linear_relations, *swapped.quadratic_relations)]
    assert ideal_equal(Ideal(ring, relations), Ideal(ring, renamed))
    basis = buchberger(relations, ring)
    for i in range(3):
        difference = flip(swapped.d_exprs[swapped.layout.d(2 - i)]) - rel.d_exprs[rel.layout.d(i)]
        assert normal_form(difference, basis).is_zero
    assert len(swapped.free_c) == len(rel.free_c)
    assert swapped.cubics_ok


@pytest.mark.slow
def test_degree6_relations_are_ten_quadrics():
    from coverforge.catalog.degree6 import degree6_relations

    rel = degree6_relations(trace_free=True)
    assert len(rel.free_c) == 16
    assert len(rel.quadratic_relations) == 10
    assert rel.cubics_ok
