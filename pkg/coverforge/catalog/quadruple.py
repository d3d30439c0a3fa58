"""The quadruple cover: deforming the square of the maximal ideal in three variables."""

from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations_with_replacement

from coverforge.catalog.base import CatalogEntry, CatalogSettings, Certificate, text_list
from coverforge.core.cover import CoverProblem, CoverRelations, cover_relations, monomial_trace_forms
from coverforge.core.groebner import Ideal
from coverforge.core.polyring import Ring
from coverforge.core.resolution import free_resolution

log = logging.getLogger(__name__)

FIBER_VARS = ("z1", "z2", "z3")
EXPECTED_BETTI = [1, 6, 8, 3]


def quadruple_problem() -> CoverProblem:
    ring = Ring(FIBER_VARS, "degrevlex")
    gens = ring.gens()
    q = [gens[a] * gens[b] for a, b in combinations_with_replacement(range(3), 2)]
    problem = CoverProblem.from_ring(ring, q, name="quadruple")
    return problem.with_trace_free(monomial_trace_forms(problem))


@lru_cache(maxsize=1)
def quadruple_relations() -> CoverRelations:
    return cover_relations(quadruple_problem())


class QuadrupleEntry(CatalogEntry):
    name = "quadruple"
    description = "free parameters and quadratic relations of the quadruple cover"

    def run(self, settings: CatalogSettings) -> Certificate:
        cert = self.certificate()
        problem = quadruple_problem()
        cert.record("trace_free", text_list(problem.trace_free))

        res = free_resolution(Ideal(problem.fiber_ring, problem.q))
        cert.check("q_betti", res.betti == EXPECTED_BETTI, str(res.betti))

        rel = quadruple_relations()
        cert.record("free_c", list(rel.free_c))
        cert.record("Iq", text_list(rel.quadratic_relations))
        cert.check("fifteen_parameters", len(rel.free_c) == 15, str(len(rel.free_c)))
        cert.check("fifteen_quadrics", len(rel.quadratic_relations) == 15, str(len(rel.quadratic_relations)))
        cert.check("cubics_vanish", rel.cubics_ok)
        log.info("quadruple: %d free parameters, %d quadrics", len(rel.free_c), len(rel.quadratic_relations))
        return cert
