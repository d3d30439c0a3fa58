"""Degree-6 Gorenstein covers: deforming the square of the ideal of two planes.

The fiber ring is Q[z1, z2, w1, w2] and q spans S²(Z) ⊕ Z·W ⊕ S²(W). Two
solver runs are compared: without trace-free conditions, and with the four
forms that make tr(z) and tr(w) vanish. The second result, renamed into the
16 parameters c00..c33, reproduces the tabulated C, D and the ten quadrics of
I_q.
"""

from __future__ import annotations

import logging
import random
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

from coverforge.catalog.base import (
    CatalogEntry,
    CatalogSettings,
    Certificate,
    derive_renaming,
    first_difference,
    matrix_difference,
    parse_all,
    point_text,
    random_rational,
    text_list,
    text_map,
)
from coverforge.catalog.three_points import delta_tc
from coverforge.core.cover import CoverProblem, CoverRelations, cover_relations, verify_fiber
from coverforge.core.errors import InternalContradiction, PreconditionError
from coverforge.core.groebner import Ideal, ideal_equal, ideal_witness
from coverforge.core.polyring import (
    PolyMatrix,
    Rational,
    RationalLike,
    Ring,
    Substitution,
    to_rational,
)
from coverforge.core.resolution import gorenstein_betti

log = logging.getLogger(__name__)

FIBER_VARS = ("z1", "z2", "w1", "w2")

Q_TEXT = (
    "z1^2", "z1*z2", "z2^2",
    "z1*w1", "1/2*(z1*w2 + z2*w1)", "z2*w2",
    "w1^2", "w1*w2", "w2^2",
)

TRACE_FREE = ("c32 + c43", "c42 + c53", "c72 + c83", "c62 + c73")

# pivots of the trace-free run, written in the free unknowns
SHIFT = {"c32": "-c43", "c42": "-c53", "c72": "-c83", "c62": "-c73"}

UNCONSTRAINED_C = [
    ["c32 + 2*c43", "-c33", "-c13", "c03"],
    ["c53", "c32", "-c23", "c13"],
    ["-c52", "2*c42 + c53", "c22", "c23"],
    ["c73", "-c63", "c32", "c33"],
    ["-1/2*c72 + 1/2*c83", "1/2*c62 - 1/2*c73", "c42", "c43"],
    ["-c82", "c72", "c52", "c53"],
    ["-c71", "c61", "c62", "c63"],
    ["-c81", "c71", "c72", "c73"],
    ["c80", "c81", "c82", "c83"],
]

TRACE_FREE_C = [
    ["c43", "-c33", "-c13", "c03"],
    ["c53", "-c43", "-c23", "c13"],
    ["-c52", "-c53", "c22", "c23"],
    ["c73", "-c63", "-c43", "c33"],
    ["c83", "-c73", "-c53", "c43"],
    ["-c82", "-c83", "c52", "c53"],
    ["-c71", "c61", "-c73", "c63"],
    ["-c81", "c71", "-c83", "c73"],
    ["c80", "c81", "c82", "c83"],
]

# free unknowns of the trace-free run -> tabulated parameters
RENAMING = {
    "c43": "c11", "c33": "-c10", "c13": "-c01", "c03": "c00",
    "c53": "-c12", "c23": "c02", "c52": "-c13", "c22": "c03",
    "c73": "-c21", "c63": "c20", "c83": "c22", "c82": "c23",
    "c71": "-c31", "c61": "c30", "c81": "c32", "c80": "c33",
}

PARAMETERS = tuple(f"c{i}{j}" for i in range(4) for j in range(4))

TABULATED_C = [
    ["c11", "c10", "c01", "c00"],
    ["-c12", "-c11", "-c02", "-c01"],
    ["c13", "c12", "c03", "c02"],
    ["-c21", "-c20", "-c11", "-c10"],
    ["c22", "c21", "c12", "c11"],
    ["-c23", "-c22", "-c13", "-c12"],
    ["c31", "c30", "c21", "c20"],
    ["-c32", "-c31", "-c22", "-c21"],
    ["c33", "c32", "c23", "c22"],
]

TABULATED_D = [
    "-2*c11^2 + 2*c10*c12 + 2*c01*c21 - c02*c20 - c00*c22",
    "-c10*c13 + c11*c12 - 2*c02*c21 + c03*c20 + c01*c22",
    "2*c11*c13 - 2*c12^2 - c03*c21 - c01*c23 + 2*c02*c22",
    "-c01*c31 + c00*c32 + c11*c21 + c12*c20 - 2*c10*c22",
    "1/2*(-c00*c33 + c01*c32 - 5*c12*c21 + c13*c20 + 4*c11*c22)",
    "c01*c33 - c02*c32 + c13*c21 - 2*c11*c23 + c12*c22",
    "2*c11*c31 - c12*c30 - c10*c32 - 2*c21^2 + 2*c20*c22",
    "c12*c31 + c10*c33 - 2*c11*c32 - c20*c23 + c21*c22",
    "-c13*c31 - c11*c33 + 2*c12*c32 + 2*c21*c23 - 2*c22^2",
]

TABULATED_IQ = [
    "c00*c13 - 3*c01*c12 + 3*c02*c11 - c03*c10",
    "c00*c23 - 3*c01*c22 + 3*c02*c21 - c03*c20",
    "c10*c33 - 3*c11*c32 + 3*c12*c31 - c13*c30",
    "c20*c33 - 3*c21*c32 + 3*c22*c31 - c23*c30",
    "c00*c31 - c01*c30 - 3*c10*c21 + 3*c11*c20",
    "c00*c32 - c02*c30 - 3*c10*c22 + 3*c12*c20",
    "c00*c33 - c03*c30 - 9*c11*c22 + 9*c12*c21",
    "c01*c33 - c03*c31 - 3*c11*c23 + 3*c13*c21",
    "c02*c33 - c03*c32 - 3*c12*c23 + 3*c13*c22",
    "c01*c32 - c02*c31 - c10*c23 + c13*c20",
]


def fiber_ring() -> Ring:
    return Ring(FIBER_VARS, "degrevlex")


def parameter_ring() -> Ring:
    return Ring(PARAMETERS, "degrevlex")


def degree6_problem(trace_free: bool = True) -> CoverProblem:
    ring = fiber_ring()
    problem = CoverProblem.from_ring(ring, parse_all(ring, Q_TEXT), name="degree6")
    if trace_free:
        problem = problem.with_trace_free(parse_all(problem.c_ring, TRACE_FREE))
    return problem


@lru_cache(maxsize=2)
def degree6_relations(trace_free: bool = True) -> CoverRelations:
    return cover_relations(degree6_problem(trace_free))


def renaming(rel: CoverRelations) -> Substitution:
    return Substitution.from_mapping(rel.c_ring, parameter_ring(), RENAMING)


def tabulated(rel: CoverRelations) -> Dict[str, object]:
    """C, D (sign flipped to the tabulated convention) and I_q in the parameters c00..c33."""
    params = parameter_ring()
    to_params = renaming(rel)
    return {
        "C": rel.C_matrix().map(to_params, params),
        "D": [-to_params(d) for d in rel.D_vector()],
        "Iq": [to_params(g) for g in rel.quadratic_relations],
    }


def iq_ideal() -> Ideal:
    params = parameter_ring()
    return Ideal(params, parse_all(params, TABULATED_IQ))


def section_point(e: Sequence[RationalLike], c: Sequence[RationalLike]) -> Dict[str, Rational]:
    """Parameters c_ij = e_i·c_j of the linear section, as values of the solver's free unknowns."""
    params = parameter_ring()
    values = {f"c{i}{j}": to_rational(e[i]) * to_rational(c[j]) for i in range(4) for j in range(4)}
    return {name: params.parse(image).evaluate(values) for name, image in RENAMING.items()}


def section_samples(rng: random.Random, count: int) -> List[Tuple[Tuple[Rational, ...], Tuple[Rational, ...]]]:
    """``count`` random (e, c) with Δ_tc(e) and Δ_tc(c) both nonzero."""
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 20 * count + 20:
            raise InternalContradiction(f"only {len(out)} of {count} sections avoid Δ_tc = 0")
        e = tuple(random_rational(rng) for _ in range(4))
        c = tuple(random_rational(rng) for _ in range(4))
        if delta_tc(e) and delta_tc(c):
            out.append((e, c))
    return out


def fiber_check(rel: CoverRelations, point: Mapping[str, RationalLike]):
    return verify_fiber(rel.problem, rel, point)


class Degree6Entry(CatalogEntry):
    name = "degree6"
    description = "C, D and I_q of the degree-6 Gorenstein family, with and without trace-free conditions"

    def run(self, settings: CatalogSettings) -> Certificate:
        cert = self.certificate()
        params = parameter_ring()

        loose = degree6_relations(trace_free=False)
        ring = loose.c_ring
        expected_loose = PolyMatrix.from_rows(ring, UNCONSTRAINED_C)
        cert.record("unconstrained_free_c", list(loose.free_c))
        cert.check("unconstrained_C", loose.C_matrix() == expected_loose,
                   matrix_difference(loose.C_matrix(), expected_loose))

        rel = degree6_relations(trace_free=True)
        expected_tight = PolyMatrix.from_rows(ring, TRACE_FREE_C)
        cert.record("free_c", list(rel.free_c))
        cert.check("trace_free_C", rel.C_matrix() == expected_tight,
                   matrix_difference(rel.C_matrix(), expected_tight))
        shift = Substitution.from_mapping(ring, ring, SHIFT)
        shifted = loose.C_matrix().map(shift)
        cert.check("trace_free_is_shift", shifted == rel.C_matrix(), matrix_difference(shifted, rel.C_matrix()))
        cert.check("sixteen_parameters", len(rel.free_c) == 16, str(len(rel.free_c)))
        cert.check("cubics_vanish", rel.cubics_ok and loose.cubics_ok)

        tab_c = PolyMatrix.from_rows(params, TABULATED_C)
        derived, conflicts = derive_renaming(rel.C_matrix(), tab_c)
        cert.record("renaming", text_map(derived))
        cert.check("renaming_consistent", not conflicts, "; ".join(conflicts))
        cert.check("renaming_matches",
                   all(derived.get(k) == params.parse(v) for k, v in RENAMING.items()),
                   str(text_map(derived)))

        table = tabulated(rel)
        cert.record("C", str(table["C"]))
        cert.record("D", text_list(table["D"]))
        cert.record("Iq", text_list(table["Iq"]))
        cert.check("C_matches", table["C"] == tab_c, matrix_difference(table["C"], tab_c))
        tab_d = parse_all(params, TABULATED_D)
        cert.check("D_matches", table["D"] == tab_d, first_difference(table["D"], tab_d))
        cert.check("ten_quadrics", len(table["Iq"]) == 10, str(len(table["Iq"])))
        computed = Ideal(params, table["Iq"])
        expected = iq_ideal()
        same = ideal_equal(computed, expected)
        witness = ""
        if not same:
            side, g = ideal_witness(computed, expected) or ("", None)
            witness = f"{side}: {g}"
        cert.check("Iq_matches", same, witness)

        rng = random.Random(settings.seed)
        reference = gorenstein_betti(6)
        bad: List[str] = []
        samples = section_samples(rng, settings.fiber_samples)
        for e, c in samples:
            point = section_point(e, c)
            try:
                report = fiber_check(rel, point)
            except PreconditionError as exc:
                bad.append(str(exc))
                continue
            if not report.ok or report.betti != reference or report.dimension != 6:
                bad.append(f"e={point_text(e)} c={point_text(c)}: length {report.dimension}, betti {report.betti}")
        cert.record("section_samples", [f"e={point_text(e)} c={point_text(c)}" for e, c in samples])
        cert.check("section_fibers", bool(samples) and not bad,
                   bad[0] if bad else
                   f"{len(samples)} fibers with delta_tc(e) != 0 of length 6, betti {reference}, initial ideal (q)")
        log.info("degree6: %d/%d checks pass", len(cert.checks) - len(cert.failures()), len(cert.checks))
        return cert
