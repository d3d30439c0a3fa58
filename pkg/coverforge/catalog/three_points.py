"""Three points in the plane: the triple-cover fiber over a field.

The quadrics

    z² - e1·z - e0·w + 2(e0e2 - e1²)
    zw + e2·z + e1·w - (e0e3 - e1e2)
    w² - e3·z - e2·w + 2(e1e3 - e2²)

cut out three points whose barycenter is the origin; they are distinct
exactly off the discriminant Δ_tc(e).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ

from coverforge.catalog.base import (
    CatalogEntry,
    CatalogSettings,
    Certificate,
    point_text,
    proportional,
    random_rational,
)
from coverforge.catalog.cyclo import CycloContext
from coverforge.core.errors import InternalContradiction, PreconditionError
from coverforge.core.groebner import (
    Ideal,
    buchberger,
    eliminate,
    multiplication_matrix,
    standard_monomials,
    trace,
)
from coverforge.core.linalg import charpoly, is_squarefree
from coverforge.core.polyring import (
    PolyMatrix,
    Polynomial,
    Rational,
    RationalLike,
    Ring,
    Substitution,
    format_rational,
    homogenize,
    to_rational,
)

log = logging.getLogger(__name__)

E_NAMES = ("e0", "e1", "e2", "e3")

DELTA_TC = "e0^2*e3^2 + 4*e0*e2^3 - 3*e1^2*e2^2 + 4*e1^3*e3 - 6*e0*e1*e2*e3"

DISPLAYED_CUBIC = (
    "(e1*e2*e3 - 1/3*e0*e3^2 - 2/3*e2^3)*z^3"
    " + (2*e1^2*e3 - e1*e2^2 - e0*e2*e3)*z^2*w"
    " + (e1^2*e2 + e0*e1*e3 - 2*e0*e2^2)*z*w^2"
    " + (2/3*e1^3 - e0*e1*e2 + 1/3*e0^2*e3)*w^3"
)

Parameter = Union[Polynomial, RationalLike]

# λ values for the separating forms z + λw; three pairs of points rule out at most three.
_SEPARATORS = (1, 2, 3, 5)


def parameter_ring() -> Ring:
    return Ring(E_NAMES, "degrevlex")


def plane_ring() -> Ring:
    """Coordinates z, w followed by the parameters e."""
    return Ring(("z", "w", *E_NAMES), "block:2")


def delta_tc(e: Optional[Sequence[Parameter]] = None) -> Union[Polynomial, Rational]:
    """Δ_tc as a polynomial in e0..e3, evaluated at rationals, or composed with polynomials."""
    ring = parameter_ring()
    delta = ring.parse(DELTA_TC)
    if e is None:
        return delta
    if len(e) != 4:
        raise PreconditionError(f"Δ_tc takes four arguments, got {len(e)}")
    polys = [v for v in e if isinstance(v, Polynomial)]
    if not polys:
        return delta.evaluate(dict(zip(E_NAMES, e)))
    target = polys[0].ring
    images = {n: v if isinstance(v, Polynomial) else target.constant(v) for n, v in zip(E_NAMES, e)}
    return Substitution.from_mapping(ring, target, images)(delta)


def three_point_quadrics(ring: Ring, e: Sequence[Parameter], z: str = "z", w: str = "w") -> List[Polynomial]:
    e0, e1, e2, e3 = [v.to_ring(ring) if isinstance(v, Polynomial) else ring.constant(v) for v in e]
    Z, W = ring.gen(z), ring.gen(w)
    return [
        Z ** 2 - e1 * Z - e0 * W + (e0 * e2 - e1 ** 2) * 2,
        Z * W + e2 * Z + e1 * W - (e0 * e3 - e1 * e2),
        W ** 2 - e3 * Z - e2 * W + (e1 * e3 - e2 ** 2) * 2,
    ]


# ── Symbolic multiplication operators ────────────────────────────────────────

def _tail(quadric: Polynomial, lead: Polynomial, z: str, w: str) -> List[Polynomial]:
    """Coefficients (of 1, z, w) of the linear expression the quadric rewrites ``lead`` to."""
    rest = (lead - quadric).collect([z, w])
    zero = quadric.ring.zero
    return [rest.get((0, 0), zero), rest.get((1, 0), zero), rest.get((0, 1), zero)]


def multiplication_operators(ring: Optional[Ring] = None) -> Tuple[PolyMatrix, PolyMatrix]:
    """Multiplication by z and by w on the basis (1, z, w), entries polynomial in e."""
    ring = ring or plane_ring()
    quadrics = three_point_quadrics(ring, [ring.gen(n) for n in E_NAMES])
    Z, W = ring.gen("z"), ring.gen("w")
    zz = _tail(quadrics[0], Z ** 2, "z", "w")
    zw = _tail(quadrics[1], Z * W, "z", "w")
    ww = _tail(quadrics[2], W ** 2, "z", "w")
    zero, one = ring.zero, ring.one
    m_z = PolyMatrix(ring, 3, 3, [zero, zz[0], zw[0], one, zz[1], zw[1], zero, zz[2], zw[2]])
    m_w = PolyMatrix(ring, 3, 3, [zero, zw[0], ww[0], zero, zw[1], ww[1], one, zw[2], ww[2]])
    return m_z, m_w


def projected_cubic() -> Polynomial:
    """det(z·M_w - w·M_z): the binary cubic vanishing on the directions of the three points."""
    m_z, m_w = multiplication_operators()
    if m_z * m_w != m_w * m_z:
        raise InternalContradiction("multiplication by z and by w do not commute")
    ring = m_z.ring
    pencil = m_w * ring.gen("z") - m_z * ring.gen("w")
    return pencil.det()


def displayed_cubic() -> Polynomial:
    return plane_ring().parse(DISPLAYED_CUBIC)


def cubic_coefficients(f: Polynomial) -> List[Polynomial]:
    """(a, b, c, d) with f = a·z³ + b·z²w + c·zw² + d·w³, as polynomials in e."""
    parts = f.collect(["z", "w"])
    e_ring = parameter_ring()
    return [parts.get(key, f.ring.zero).to_ring(e_ring) for key in ((3, 0), (2, 1), (1, 2), (0, 3))]


def cubic_discriminant(a: Polynomial, b: Polynomial, c: Polynomial, d: Polynomial) -> Polynomial:
    return (b ** 2 * c ** 2 - a * c ** 3 * 4 - b ** 3 * d * 4
            - a ** 2 * d ** 2 * 27 + a * b * c * d * 18)


def discriminant_relation(max_exponent: int = 4) -> Tuple[Rational, int]:
    """(s, k) with disc(displayed cubic) = s·Δ_tc^k."""
    disc = cubic_discriminant(*cubic_coefficients(displayed_cubic()))
    delta = delta_tc()
    for k in range(1, max_exponent + 1):
        s = proportional(disc, delta ** k)
        if s is not None:
            return s, k
    raise InternalContradiction("the cubic discriminant is not a multiple of a power of Δ_tc")


def specialize_cubic(f: Polynomial, e: Sequence[RationalLike]) -> Polynomial:
    ring = Ring(("z", "w"), "degrevlex")
    return f.specialize(dict(zip(E_NAMES, e))).to_ring(ring)


def eliminated_cubic(e: Sequence[RationalLike]) -> Polynomial:
    """Homogenize with t at rational e and eliminate t; the result must be one cubic."""
    ring = Ring(("t", "z", "w"), "degrevlex")
    homog = [homogenize(q, "t", 2) for q in three_point_quadrics(ring, e)]
    projected = eliminate(Ideal(ring, homog), ["t"])
    gens = list(projected.generators)
    if len(gens) != 1 or gens[0].degree() != 3:
        raise InternalContradiction(f"projection from (0:0:1) gave {len(gens)} generators, not one cubic")
    return gens[0]


def homogenized_ring() -> Ring:
    return Ring(("z", "w", "t", *E_NAMES), "block:3")


def homogenized_quadrics(ring: Optional[Ring] = None) -> List[Polynomial]:
    """The three quadrics padded with t to degree 2 in (z, w, t); the e stay coefficients."""
    ring = ring or homogenized_ring()
    quadrics = three_point_quadrics(ring, [ring.gen(n) for n in E_NAMES])
    return [homogenize(q, "t", 2, wrt=("z", "w")) for q in quadrics]


def cubic_in_projection(f: Optional[Polynomial] = None) -> bool:
    """Whether ``f`` (the displayed cubic by default) lies in the t-free part of the homogenized ideal."""
    ring = homogenized_ring()
    f = displayed_cubic() if f is None else f
    return Ideal(ring, homogenized_quadrics(ring)).contains(f.to_ring(ring))


# ── Rational fibers ───────────────────────────────────────────────────────────

@dataclass
class ThreePointReport:
    e: Tuple[Rational, ...]
    delta: Rational
    dimension: Optional[int]
    distinct: bool
    trace_z: Rational
    trace_w: Rational

    @property
    def barycenter_at_origin(self) -> bool:
        return not self.trace_z and not self.trace_w


def _fiber(e: Sequence[RationalLike]):
    ring = Ring(("z", "w"), "degrevlex")
    basis = buchberger(three_point_quadrics(ring, e), ring)
    return ring, basis


def points_distinct(e: Sequence[RationalLike]) -> bool:
    """Some z + λw has a squarefree characteristic polynomial on the quotient."""
    ring, basis = _fiber(e)
    sm = standard_monomials(basis)
    if sm.dimension != 3:
        return False
    z, w = ring.gen("z"), ring.gen("w")
    for lam in _SEPARATORS:
        if is_squarefree(charpoly(multiplication_matrix(basis, z + w * lam, sm.monomials))):
            return True
    return False


def fiber_report(e: Sequence[RationalLike]) -> ThreePointReport:
    values = tuple(to_rational(v) for v in e)
    ring, basis = _fiber(values)
    sm = standard_monomials(basis)
    return ThreePointReport(
        e=values,
        delta=delta_tc(values),
        dimension=sm.dimension,
        distinct=points_distinct(values),
        trace_z=trace(basis, ring.gen("z")),
        trace_w=trace(basis, ring.gen("w")),
    )


def three_points_check(e: Sequence[RationalLike]) -> ThreePointReport:
    """Three distinct points with barycenter 0; requires Δ_tc(e) != 0."""
    values = tuple(to_rational(v) for v in e)
    if not delta_tc(values):
        raise PreconditionError(f"Δ_tc vanishes at e = ({', '.join(format_rational(v) for v in values)})")
    report = fiber_report(values)
    if report.dimension != 3 or not report.distinct:
        raise InternalContradiction(f"e = {values}: expected three distinct points")
    if not report.barycenter_at_origin:
        raise InternalContradiction(f"e = {values}: traces {report.trace_z}, {report.trace_w} are not zero")
    return report


def cyclotomic_points(ctx: Optional[CycloContext] = None) -> List[Tuple[Polynomial, Polynomial]]:
    """The points over e = (1, 0, 0, 1): (1, 1), (ε, ε²), (ε², ε)."""
    ctx = ctx or CycloContext(("z", "w"))
    one = ctx.ring.one
    return [(one, one), (ctx.power(1), ctx.power(2)), (ctx.power(2), ctx.power(1))]


def sample_parameters(rng: random.Random, count: int) -> List[Tuple[Rational, ...]]:
    """Random e; every fifth sample is pushed onto Δ_tc = 0 by setting e2 = e3 = 0."""
    out = []
    for i in range(count):
        e = [random_rational(rng) for _ in range(4)]
        if i % 5 == 4:
            e[2] = e[3] = QQ.zero
        out.append(tuple(e))
    return out


# ── Catalog entry ─────────────────────────────────────────────────────────────

class ThreePointsEntry(CatalogEntry):
    name = "three-points"
    description = "Δ_tc, the projected cubic and its discriminant, barycenter and ramification of three points"

    def run(self, settings: CatalogSettings) -> Certificate:
        cert = self.certificate()
        delta = delta_tc()
        cert.record("delta_tc", str(delta))
        cert.check("delta_tc_unit", delta_tc((1, 0, 0, 1)) == 1, format_rational(delta_tc((1, 0, 0, 1))))
        cert.check("delta_tc_origin", delta_tc((0, 0, 0, 0)) == 0)

        projected = projected_cubic()
        displayed = displayed_cubic()
        scalar = proportional(displayed, projected)
        cert.record("projected_cubic", str(projected))
        cert.check("projected_cubic_matches_display", scalar is not None,
                   f"displayed = {format_rational(scalar)} * projected" if scalar is not None else str(projected))
        cert.check("displayed_cubic_in_projection", cubic_in_projection(displayed),
                   "t-free part of the homogenized ideal over Q[e]")

        unit = specialize_cubic(displayed, (1, 0, 0, 1))
        cert.record("cubic_at_unit", str(unit))
        a, b, c, d = cubic_coefficients(displayed)
        unit_disc = cubic_discriminant(a, b, c, d).evaluate(dict(zip(E_NAMES, (1, 0, 0, 1))))
        cert.check("cubic_at_unit_separable", unit_disc != 0, format_rational(unit_disc))

        s, k = discriminant_relation()
        cert.record("discriminant_relation", f"disc = {format_rational(s)} * delta_tc^{k}")
        cert.check("discriminant_is_delta_power", k == 3, f"scalar {format_rational(s)}, exponent {k}")

        rng = random.Random(settings.seed)
        samples = sample_parameters(rng, settings.ramification_samples)
        mismatches, traces_bad, eliminations_bad = [], [], []
        for e in samples:
            report = fiber_report(e)
            if bool(report.delta) != report.distinct:
                mismatches.append(e)
            if not report.barycenter_at_origin:
                traces_bad.append(e)
        unramified = [e for e in samples if delta_tc(e)]
        for e in unramified:
            expected = specialize_cubic(displayed, e)
            try:
                eliminated = eliminated_cubic(e)
            except InternalContradiction as exc:
                log.warning("three-points: %s", exc)
                eliminations_bad.append(e)
                continue
            if proportional(eliminated, expected) is None:
                eliminations_bad.append(e)
        cert.check("ramification_criterion", not mismatches,
                   f"{len(samples)} samples" if not mismatches else "counterexample e = " + point_text(mismatches[0]))
        cert.check("barycenter_traces_vanish", not traces_bad,
                   "" if not traces_bad else "e = " + point_text(traces_bad[0]))
        cert.check("elimination_matches_projection", bool(unramified) and not eliminations_bad,
                   f"{len(unramified)} samples" if not eliminations_bad else "e = " + point_text(eliminations_bad[0]))

        ctx = CycloContext(("z", "w"))
        quadrics = three_point_quadrics(ctx.ring, (1, 0, 0, 1))
        points = cyclotomic_points(ctx)
        on_fiber = all(not any(ctx.point_residues(quadrics, p, ("z", "w"))) for p in points)
        cert.check("unit_fiber_points", on_fiber, "(1, 1), (eps, eps^2), (eps^2, eps)")
        separated = all(
            not ctx.is_zero(points[i][0] - points[j][0]) for i in range(3) for j in range(i + 1, 3)
        )
        cert.check("unit_fiber_points_distinct", separated)
        cert.check("unit_barycenter", ctx.is_zero(ctx.ring.one + ctx.eps + ctx.eps ** 2))
        log.info("three-points: %d/%d checks pass", len(cert.checks) - len(cert.failures()), len(cert.checks))
        return cert
