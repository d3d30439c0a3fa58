from __future__ import annotations

import random

import pytest
from sympy.polys.domains import QQ

from coverforge.catalog import entry_names, get_entry, run_all
from coverforge.catalog.base import Certificate, first_difference, point_text, proportional
from coverforge.catalog.cyclo import CycloContext
from coverforge.catalog.degree6 import (
    RENAMING,
    SHIFT,
    TABULATED_C,
    TABULATED_IQ,
    TRACE_FREE_C,
    UNCONSTRAINED_C,
    degree6_problem,
    parameter_ring,
    section_point,
    section_samples,
)
from coverforge.catalog.galois import z2_residues_at, z3_scale_at
from coverforge.catalog.spinor import SpinorEntry, fitted_xi0_sign, rearrangement_sign
from coverforge.catalog.three_points import (
    ThreePointsEntry,
    cubic_in_projection,
    cyclotomic_points,
    delta_tc,
    discriminant_relation,
    eliminated_cubic,
    plane_ring,
    points_distinct,
    projected_cubic,
    specialize_cubic,
    three_point_quadrics,
    three_points_check,
)
from coverforge.catalog.triple_cover import TripleCoverEntry
from coverforge.core.errors import PreconditionError, RegressionMismatch
from coverforge.core.polyring import PolyMatrix, Substitution, to_rational


def test_entry_names():
    assert entry_names() == ["deg6-ogr", "degree6", "galois", "quadruple", "three-points", "triple-cover"]


def test_unknown_entry():
    with pytest.raises(PreconditionError, match="known: deg6-ogr"):
        get_entry("sextic")


def test_require_raises_on_first_failure():
    cert = Certificate("demo")
    cert.check("good", True)
    cert.check("bad", False, "got 2")
    assert not cert.ok
    assert cert.get("bad").status == "fail"
    with pytest.raises(RegressionMismatch) as info:
        cert.require()
    assert info.value.exit_code == 3
    assert "check bad failed: got 2" in str(info.value)


def test_comparison_helpers(xy):
    x, y = xy.gens()
    assert proportional(x.scale(3) - y.scale(6), x - y.scale(2)) == 3
    assert proportional(x + y, x - y) is None
    assert first_difference([x, y], [x, y]) == ""
    assert first_difference([x], [y]).startswith("entry 0")
    assert first_difference([x], [x, y]) == "length 1 != 2"


def test_delta_tc_values():
    assert delta_tc((1, 0, 0, 1)) == 1
    assert delta_tc((0, 0, 0, 0)) == 0


def test_three_points_at_the_unit_parameter():
    report = three_points_check((1, 0, 0, 1))
    assert report.dimension == 3
    assert report.distinct
    assert report.barycenter_at_origin


def test_three_points_refuses_the_discriminant():
    with pytest.raises(PreconditionError):
        three_points_check((1, 2, 0, 0))


def test_ramified_parameters_merge_points():
    assert delta_tc((1, 2, 0, 0)) == 0
    assert not points_distinct((1, 2, 0, 0))


def test_discriminant_is_a_cube_of_delta():
    scalar, exponent = discriminant_relation()
    assert exponent == 3
    assert scalar != 0


def test_cyclotomic_points_lie_on_the_unit_fiber():
    ctx = CycloContext(("z", "w"))
    quadrics = three_point_quadrics(ctx.ring, (1, 0, 0, 1))
    for point in cyclotomic_points(ctx):
        assert all(r.is_zero for r in ctx.point_residues(quadrics, point, ("z", "w")))
    assert ctx.power(3) == ctx.ring.one
    assert ctx.is_zero(ctx.ring.one + ctx.eps + ctx.eps ** 2)


def test_cyclotomic_matrix_power():
    ctx = CycloContext()
    rotation = ctx.matrix([[ctx.eps, 0], [0, ctx.eps ** 2]])
    assert ctx.matrices_equal(ctx.matrix_power(rotation, 3), ctx.matrix([[1, 0], [0, 1]]))


def test_spinor_signs():
    assert rearrangement_sign() == 1
    assert fitted_xi0_sign() == -1


def test_displayed_cubic_lies_in_the_homogenized_ideal():
    assert cubic_in_projection()
    assert not cubic_in_projection(plane_ring().parse("z^3"))


@pytest.mark.parametrize("e", [(1, 0, 0, 1), (2, -1, 3, 1)])
def test_elimination_agrees_with_the_projected_cubic(e):
    assert delta_tc(e) != 0
    assert proportional(eliminated_cubic(e), specialize_cubic(projected_cubic(), e)) is not None


def test_point_text():
    assert point_text((QQ(1, 2), 0, -3)) == "(1/2, 0, -3)"


# ── Degree 6 without the solver ──────────────────────────────────────────────

def test_section_samples_avoid_the_discriminant():
    samples = section_samples(random.Random(3), 4)
    assert len(samples) == 4
    assert all(delta_tc(e) and delta_tc(c) for e, c in samples)


def test_section_point_uses_the_renaming():
    point = section_point((1, 2, -1, 3), (2, 1, 3, -1))
    assert set(point) == set(RENAMING)
    assert point["c43"] == 2   # c11 = e1*c1
    assert point["c33"] == -4  # -c10
    assert point["c53"] == -6  # -c12
    assert point["c80"] == -3  # c33


def test_trace_free_c_renames_to_the_tabulated_c():
    ring = degree6_problem(trace_free=False).c_ring
    params = parameter_ring()
    to_params = Substitution.from_mapping(ring, params, RENAMING)
    renamed = PolyMatrix.from_rows(ring, TRACE_FREE_C).map(to_params, params)
    assert renamed == PolyMatrix.from_rows(params, TABULATED_C)


def test_unconstrained_c_shifts_to_the_trace_free_c():
    ring = degree6_problem(trace_free=False).c_ring
    shift = Substitution.from_mapping(ring, ring, SHIFT)
    shifted = PolyMatrix.from_rows(ring, UNCONSTRAINED_C).map(shift)
    assert shifted == PolyMatrix.from_rows(ring, TRACE_FREE_C)


@pytest.mark.parametrize("e, c", [((1, 2, -1, 3), (2, 1, 3, -1)), ((QQ(1, 2), 0, 1, -2), (1, 1, 1, 1))])
def test_tabulated_iq_vanishes_on_linear_sections(e, c):
    params = parameter_ring()
    values = {f"c{i}{j}": to_rational(e[i]) * to_rational(c[j]) for i in range(4) for j in range(4)}
    assert all(params.parse(g).evaluate(values) == 0 for g in TABULATED_IQ)


# ── Galois quotients on single fibers ────────────────────────────────────────

@pytest.mark.parametrize("c", [(1, 0, 0, 1), (2, -1, 3, 1)])
def test_z2_quotient_holds_on_fibers(c):
    assert all(r.is_zero for r in z2_residues_at(c))


@pytest.mark.parametrize("c", [(1, 0, 0, 1), (2, -1, 3, 1)])
def test_z3_quotient_uses_the_full_minor(c):
    assert z3_scale_at(c) == 1
    assert z3_scale_at(c, minor_scale=QQ(1, 2)) == 4


@pytest.mark.parametrize("entry_cls", [ThreePointsEntry, TripleCoverEntry, SpinorEntry])
def test_quick_entries_pass(entry_cls, quick_settings):
    cert = entry_cls().run(quick_settings)
    assert cert.ok, [c.to_dict() for c in cert.failures()]


def test_run_all_keeps_name_order(quick_settings):
    certs = run_all(quick_settings, threads=2, names=["triple-cover", "three-points"])
    assert [c.name for c in certs] == ["three-points", "triple-cover"]
    assert all(c.ok for c in certs)


def test_run_all_rejects_unknown_names_before_running(quick_settings):
    with pytest.raises(PreconditionError):
        run_all(quick_settings, names=["triple-cover", "bogus"])


@pytest.mark.slow
@pytest.mark.parametrize("name", ["quadruple", "degree6", "galois"])
def test_heavy_entries_pass(name, quick_settings):
    cert = get_entry(name).run(quick_settings)
    assert cert.ok, [c.to_dict() for c in cert.failures()]
