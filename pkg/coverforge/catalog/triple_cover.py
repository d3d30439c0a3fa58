"""The triple cover: deforming the square of the maximal ideal in two variables."""

from __future__ import annotations

import logging
import random
from functools import lru_cache
from typing import Dict, List

from coverforge.catalog.base import (
    CatalogEntry,
    CatalogSettings,
    Certificate,
    derive_renaming,
    first_difference,
    matrix_difference,
    parse_all,
    random_rational,
    text_list,
    text_map,
)
from coverforge.catalog.three_points import E_NAMES, plane_ring, three_point_quadrics
from coverforge.core.cover import CoverProblem, CoverRelations, cover_relations, verify_fiber
from coverforge.core.polyring import PolyMatrix, Polynomial, Ring, Substitution

log = logging.getLogger(__name__)

PARAMETERS = ("c0", "c1", "c2", "c3")

# free unknowns of the solver, written in the parameters c0..c3
RENAMING = {"c01": "c0", "c11": "-c1", "c20": "c3", "c21": "c2"}

EXPECTED_C = [["c1", "c0"], ["-c2", "-c1"], ["c3", "c2"]]
EXPECTED_N = [["c3", "c2"], ["2*c2", "2*c1"], ["c1", "c0"]]
EXPECTED_D = ["2*(c0*c2 - c1^2)", "-(c0*c3 - c1*c2)", "2*(c1*c3 - c2^2)"]


def parameter_ring() -> Ring:
    return Ring(PARAMETERS, "degrevlex")


def triple_cover_problem() -> CoverProblem:
    ring = Ring(("z1", "z2"), "degrevlex")
    z1, z2 = ring.gens()
    c = Ring(("c00", "c01", "c10", "c11", "c20", "c21"), "degrevlex")
    return CoverProblem.from_ring(
        ring,
        [z1 ** 2, z1 * z2, z2 ** 2],
        trace_free=[c.parse("c00 + c11"), c.parse("c10 + c21")],
        syzygies=[[ring.zero, -z2, z1], [z2, -z1, ring.zero]],
        name="triple-cover",
    )


@lru_cache(maxsize=1)
def triple_cover_relations() -> CoverRelations:
    return cover_relations(triple_cover_problem())


def renaming(rel: CoverRelations) -> Substitution:
    return Substitution.from_mapping(rel.c_ring, parameter_ring(), RENAMING)


def hilbert_burch_minors(rel: CoverRelations) -> List[Polynomial]:
    """(-1)^i times the maximal minor of l + N with row i deleted."""
    lifted = rel.lifted_syzygies()
    out = []
    for i in range(lifted.rows):
        rows = [k for k in range(lifted.rows) if k != i]
        minor = lifted.submatrix(rows, range(lifted.cols)).det()
        out.append(minor if i % 2 == 0 else -minor)
    return out


def family_as_three_points(rel: CoverRelations) -> List[Polynomial]:
    """The family with z1, z2 renamed z, w and the free c's renamed e."""
    target = plane_ring()
    mapping: Dict[str, str] = {"z1": "z", "z2": "w"}
    for name, image in RENAMING.items():
        mapping[name] = image.replace("c", "e")
    subst = Substitution.from_mapping(rel.layout.family_ring(), target, mapping)
    return [subst(f) for f in rel.family()]


class TripleCoverEntry(CatalogEntry):
    name = "triple-cover"
    description = "C, N and D of the triple cover, Hilbert-Burch form and the three-point quadrics"

    def run(self, settings: CatalogSettings) -> Certificate:
        cert = self.certificate()
        rel = triple_cover_relations()
        to_params = renaming(rel)
        params = parameter_ring()

        C = rel.C_matrix().map(to_params, params)
        N = rel.N_matrix().transpose().map(to_params, params)
        D = [-to_params(d) for d in rel.D_vector()]
        cert.record("free_c", list(rel.free_c))
        cert.record("C", str(C))
        cert.record("N", str(N))
        cert.record("D", text_list(D))
        cert.record("relations", text_list(rel.quadratic_relations))

        expected_c = PolyMatrix.from_rows(params, EXPECTED_C)
        derived, conflicts = derive_renaming(rel.C_matrix(), expected_c)
        cert.record("renaming", text_map(derived))
        cert.check("renaming_consistent", not conflicts, "; ".join(conflicts))
        cert.check("renaming_matches",
                   all(derived.get(k) == params.parse(v) for k, v in RENAMING.items()),
                   str(text_map(derived)))
        cert.check("C_matches", C == expected_c, matrix_difference(C, expected_c))
        expected_n = PolyMatrix.from_rows(params, EXPECTED_N)
        cert.check("N_matches", N == expected_n, matrix_difference(N, expected_n))
        expected_d = parse_all(params, EXPECTED_D)
        cert.check("D_matches", D == expected_d, first_difference(D, expected_d))
        cert.check("no_quadratic_relations", not rel.quadratic_relations, "; ".join(text_list(rel.quadratic_relations)))
        cert.check("cubics_vanish", rel.cubics_ok)

        minors = hilbert_burch_minors(rel)
        family = rel.family()
        cert.check("hilbert_burch", minors == family, first_difference(minors, family))

        plane = plane_ring()
        renamed = family_as_three_points(rel)
        quadrics = three_point_quadrics(plane, [plane.gen(n) for n in E_NAMES])
        cert.check("three_point_quadrics", renamed == quadrics, first_difference(renamed, quadrics))

        rng = random.Random(settings.seed)
        bad = []
        for _ in range(settings.fiber_samples):
            point = {name: random_rational(rng) for name in rel.free_c}
            report = verify_fiber(rel.problem, rel, point)
            if not report.ok:
                bad.append(report)
        witness = f"{settings.fiber_samples} fibers of length 3, betti 1,3,2"
        if bad:
            witness = f"betti {bad[0].betti} at {text_map(bad[0].c_point)}"
        cert.check("fibers_flat", not bad, witness)
        log.info("triple-cover: %d/%d checks pass", len(cert.checks) - len(cert.failures()), len(cert.checks))
        return cert
