"""The cover-homomorphism solver.

Given quadratic generators q of a fat-point ideal with linear first syzygies
l, deform them to f_i = q_i - Σ_j c_ij z_j - d_i and ask which coefficients
keep the resolution format. Homogenizing with z0, the condition is

    (q - z̄·C·z0 - D·z0²)(l + N·z0) = 0,

solved stratum by stratum in z0: the z0 coefficient fixes N and the linear
relations among the c's, the z0² coefficient fixes D and the quadratic
relations, and the z0³ coefficient must already follow from those.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from itertools import combinations_with_replacement
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from coverforge.core.errors import (
    ContextError,
    HypothesisViolation,
    InternalContradiction,
    PreconditionError,
)
from coverforge.core.groebner import (
    GroebnerBasis,
    Ideal,
    buchberger,
    ideal_equal,
    initial_ideal,
    min_generators,
    normal_form,
    standard_monomials,
)
from coverforge.core.linalg import echelon_polynomials, rref
from coverforge.core.modules import (
    FreeModuleElement,
    module_groebner,
    module_normal_form,
    syzygy_matrix,
    syzygy_module,
)
from coverforge.core.polyring import (
    Monomial,
    Polynomial,
    PolyMatrix,
    Rational,
    RationalLike,
    Ring,
    Substitution,
    homogenize,
    mat_mul,
    substitute,
    to_rational,
)
from coverforge.core.resolution import Resolution, free_resolution

log = logging.getLogger(__name__)


def _fresh(base: str, taken: Sequence[str]) -> str:
    if base not in taken:
        return base
    i = 0
    while f"{base}_{i}" in taken:
        i += 1
    return f"{base}_{i}"


def _pair_name(prefix: str, a: int, b: int) -> str:
    if a > 9 or b > 9:
        return f"{prefix}{a}_{b}"
    return f"{prefix}{a}{b}"


def c_names(m: int, r: int) -> List[str]:
    """``c{i}{j}`` for generator i and fiber variable j, row-major."""
    return [_pair_name("c", i, j) for i in range(m) for j in range(r)]


# ── Problem and layout ────────────────────────────────────────────────────────

@dataclass(frozen=True)
class CoverProblem:
    """Quadratic generators q in the fiber variables, plus optional constraints.

    ``trace_free`` holds linear forms in the c unknowns (ring ``c_ring``);
    ``syzygies`` optionally fixes the columns of l.
    """

    fiber_ring: Ring
    q: Tuple[Polynomial, ...]
    trace_free: Tuple[Polynomial, ...] = ()
    syzygies: Optional[Tuple[FreeModuleElement, ...]] = None
    name: str = "cover"

    @classmethod
    def from_ring(
        cls,
        ring: Ring,
        q: Sequence[Polynomial],
        trace_free: Sequence[Polynomial] = (),
        syzygies: Optional[Sequence[Sequence[Polynomial]]] = None,
        name: str = "cover",
    ) -> "CoverProblem":
        """Fiber variables are the ring variables that occur in q, in ring order."""
        if not q:
            raise HypothesisViolation("a cover problem needs at least one generator")
        used = {n for g in q for n in g.variables()}
        fiber = Ring([n for n in ring.names if n in used], "degrevlex")
        gens = tuple(g.to_ring(fiber) for g in q)
        syz = None
        if syzygies:
            syz = tuple(FreeModuleElement.of([p.to_ring(fiber) for p in col]) for col in syzygies)
        problem = cls(fiber, gens, (), syz, name)
        if trace_free:
            problem = problem.with_trace_free(trace_free)
        return problem

    @property
    def fiber_vars(self) -> Tuple[str, ...]:
        return self.fiber_ring.names

    @property
    def m(self) -> int:
        return len(self.q)

    @property
    def r(self) -> int:
        return self.fiber_ring.arity

    @property
    def c_ring(self) -> Ring:
        return Ring(c_names(self.m, self.r), "degrevlex")

    def c_name(self, i: int, j: int) -> str:
        return _pair_name("c", i, j)

    def with_trace_free(self, forms: Sequence[Polynomial]) -> "CoverProblem":
        c_ring = self.c_ring
        converted = []
        for form in forms:
            try:
                converted.append(form.to_ring(c_ring))
            except ContextError as exc:
                raise HypothesisViolation(f"trace-free form {form} is not a form in the c unknowns: {exc}") from None
        return replace(self, trace_free=tuple(converted))

    def validate(self) -> None:
        for i, g in enumerate(self.q):
            if not g.is_homogeneous() or g.degree() != 2:
                raise HypothesisViolation(f"q{i} = {g} is not a homogeneous quadric")
        if len(min_generators(self.q)) != self.m:
            raise HypothesisViolation("q is not a minimal generating set")
        for form in self.trace_free:
            if form.degree() != 1 or not form.is_homogeneous():
                raise HypothesisViolation(f"trace-free condition {form} is not a linear form")


@dataclass(frozen=True)
class UnknownLayout:
    """Names of the unknowns: c (m x r), d (m), n (syzygies x m)."""

    fiber_vars: Tuple[str, ...]
    m: int
    n_syz: int
    z0: str = "z0"

    @property
    def r(self) -> int:
        return len(self.fiber_vars)

    def c(self, i: int, j: int) -> str:
        return _pair_name("c", i, j)

    def d(self, i: int) -> str:
        return f"d{i}"

    def n(self, k: int, i: int) -> str:
        return _pair_name("n", k, i)

    @property
    def c_names(self) -> List[str]:
        return c_names(self.m, self.r)

    @property
    def d_names(self) -> List[str]:
        return [self.d(i) for i in range(self.m)]

    @property
    def n_names(self) -> List[str]:
        return [self.n(k, i) for k in range(self.n_syz) for i in range(self.m)]

    def c_ring(self) -> Ring:
        return Ring(self.c_names, "degrevlex")

    def system_ring(self) -> Ring:
        names = [self.z0, *self.fiber_vars, *self.n_names, *self.d_names, *self.c_names]
        return Ring(names, "degrevlex")

    def family_ring(self) -> Ring:
        """Fiber variables followed by the c unknowns."""
        return Ring([*self.fiber_vars, *self.c_names], "degrevlex")


# ── Step 1: the system ────────────────────────────────────────────────────────

@dataclass
class CoverSystem:
    problem: CoverProblem
    layout: UnknownLayout
    ring: Ring
    l: PolyMatrix
    E: PolyMatrix
    _strata: Optional[List[Dict[Monomial, Polynomial]]] = field(default=None, repr=False)

    def strata(self) -> List[Dict[Monomial, Polynomial]]:
        """Per syzygy k: (z0 power, fiber exponents) -> coefficient in the unknowns."""
        if self._strata is None:
            axes = [self.layout.z0, *self.layout.fiber_vars]
            self._strata = [self.E[0, k].collect(axes) for k in range(self.E.cols)]
        return self._strata

    def stratum(self, power: int) -> List[Tuple[int, Monomial, Polynomial]]:
        out = []
        for k, coeffs in enumerate(self.strata()):
            for key in sorted(coeffs, reverse=True):
                if key[0] == power:
                    out.append((k, key[1:], coeffs[key]))
        return out


def _linear_syzygies(problem: CoverProblem) -> List[FreeModuleElement]:
    computed = syzygy_module(problem.q)
    if problem.syzygies is None:
        syz = computed
    else:
        syz = list(problem.syzygies)
        for s in syz:
            if s.rank != problem.m or not s.combine([FreeModuleElement.of([g]) for g in problem.q]).is_zero:
                raise HypothesisViolation(f"supplied syzygy {s} does not annihilate q")
        if computed:
            basis = module_groebner(syz)
            for s in computed:
                if not module_normal_form(s, basis).is_zero:
                    raise HypothesisViolation(f"supplied syzygies miss {s}")
        if len(syz) != len(computed):
            raise HypothesisViolation(f"{len(syz)} syzygies supplied, the module needs {len(computed)}")
    for s in syz:
        for entry in s:
            if entry and (entry.degree() != 1 or not entry.is_homogeneous()):
                raise HypothesisViolation(f"syzygy {s} has a non-linear entry {entry}")
    return syz


def build_system(problem: CoverProblem) -> CoverSystem:
    problem.validate()
    syz = _linear_syzygies(problem)
    l = syzygy_matrix(list(problem.q), syz)
    q_row = PolyMatrix(problem.fiber_ring, 1, problem.m, problem.q)
    if not mat_mul(q_row, l).is_zero():
        raise InternalContradiction("q·l is not zero")

    layout = UnknownLayout(problem.fiber_vars, problem.m, len(syz), _fresh("z0", problem.fiber_vars))
    ring = layout.system_ring()
    z0 = ring.gen(layout.z0)
    fiber = [ring.gen(v) for v in layout.fiber_vars]

    row = []
    for i, qi in enumerate(problem.q):
        lin = ring.zero
        for j, v in enumerate(fiber):
            lin = lin + ring.gen(layout.c(i, j)) * v
        row.append(qi.to_ring(ring) - lin * z0 - ring.gen(layout.d(i)) * z0 ** 2)
    F = PolyMatrix(ring, 1, problem.m, row)
    lifted = [
        l[i, k].to_ring(ring) + ring.gen(layout.n(k, i)) * z0
        for i in range(problem.m)
        for k in range(len(syz))
    ]
    L = PolyMatrix(ring, problem.m, len(syz), lifted)
    E = mat_mul(F, L)
    log.info("cover system: %d generators, %d linear syzygies, %d unknowns",
             problem.m, len(syz), len(layout.n_names) + len(layout.d_names) + len(layout.c_names))
    return CoverSystem(problem, layout, ring, l, E)


# ── Step 2: eliminate n ───────────────────────────────────────────────────────

@dataclass(frozen=True)
class LinearStep:
    n_subst: Dict[str, Polynomial]
    c_subst: Dict[str, Polynomial]
    linear_relations: Tuple[Polynomial, ...]
    free_c: Tuple[str, ...]


def step2_eliminate_n(system: CoverSystem, trace_free: Optional[Sequence[Polynomial]] = None) -> LinearStep:
    """Gaussian elimination on the z0 stratum, n columns first, then c's by (i, j)."""
    layout = system.layout
    ring = system.ring
    c_ring = layout.c_ring()
    columns = layout.n_names + layout.c_names
    col_of_var = {ring.index(name): col for col, name in enumerate(columns)}
    ncols = len(columns)
    n_count = len(layout.n_names)

    rows: List[List[Rational]] = []
    for k, mono, coeff in system.stratum(1):
        row = [QQ.zero] * ncols
        for monom, value in coeff.rep.items():
            var = [i for i, e in enumerate(monom) if e]
            if len(var) != 1 or monom[var[0]] != 1 or var[0] not in col_of_var:
                raise InternalContradiction(f"z0 stratum coefficient {coeff} is not linear in n and c")
            row[col_of_var[var[0]]] = value
        rows.append(row)

    forms = system.problem.trace_free if trace_free is None else tuple(trace_free)
    for form in forms:
        form = form.to_ring(c_ring)
        if form.constant_term:
            raise HypothesisViolation(f"trace-free condition {form} has a constant term")
        row = [QQ.zero] * ncols
        for monom, value in form.rep.items():
            row[n_count + monom.index(1)] = value
        rows.append(row)

    reduced, pivots = rref(rows, ncols)
    missing = [columns[i] for i in range(n_count) if i not in pivots]
    if missing:
        raise InternalContradiction(f"the z0 stratum does not determine {', '.join(missing)}")
    free = [columns[i] for i in range(n_count, ncols) if i not in pivots]
    free_gens = {name: c_ring.gen(name) for name in free}

    n_subst: Dict[str, Polynomial] = {}
    c_subst: Dict[str, Polynomial] = {}
    relations: List[Polynomial] = []
    for row, pivot in zip(reduced, pivots):
        tail = c_ring.zero
        for col in range(n_count, ncols):
            if col != pivot and row[col]:
                tail = tail + free_gens[columns[col]].scale(row[col])
        if pivot < n_count:
            n_subst[columns[pivot]] = -tail
        else:
            c_subst[columns[pivot]] = -tail
            relations.append(c_ring.gen(columns[pivot]) + tail)
    log.info("step 2: %d n eliminated, %d linear relations, %d free c", len(n_subst), len(relations), len(free))
    return LinearStep(n_subst, c_subst, tuple(relations), tuple(free))


# ── Step 3: solve for d ───────────────────────────────────────────────────────

@dataclass(frozen=True)
class QuadraticStep:
    d_exprs: Dict[str, Polynomial]
    quadratic_relations: Tuple[Polynomial, ...]


def _substitution(system: CoverSystem, target: Ring, linear: LinearStep, d_exprs: Optional[Mapping[str, Polynomial]] = None) -> Substitution:
    images = {}
    for name, value in linear.n_subst.items():
        images[name] = value.to_ring(target)
    for name, value in linear.c_subst.items():
        images[name] = value.to_ring(target)
    if d_exprs is not None:
        for name, value in d_exprs.items():
            images[name] = value.to_ring(target)
    return Substitution(system.ring, target, tuple(images.items()))


def step3_solve_d(system: CoverSystem, linear: LinearStep) -> QuadraticStep:
    """Gauss-Jordan on the d columns of the z0² stratum with polynomial right-hand sides."""
    layout = system.layout
    c_ring = layout.c_ring()
    dc_ring = Ring([*layout.d_names, *layout.c_names], "degrevlex")
    subst = _substitution(system, dc_ring, linear)
    m = layout.m

    rows: List[Tuple[List[Rational], Polynomial]] = []
    for k, mono, coeff in system.stratum(2):
        image = substitute(coeff, subst)
        alpha = [QQ.zero] * m
        rest = {}
        for monom, value in image.rep.items():
            if any(monom[:m]):
                if sum(monom[:m]) != 1 or any(monom[m:]):
                    raise InternalContradiction(f"z0² stratum coefficient {image} is not affine in d")
                alpha[monom[:m].index(1)] = value
            else:
                rest[monom[m:]] = value
        rows.append((alpha, c_ring.from_terms(rest.items())))

    pivot_rows: Dict[int, int] = {}
    for col in range(m):
        candidates = [i for i in range(len(rows)) if i not in pivot_rows.values() and rows[i][0][col]]
        if not candidates:
            raise HypothesisViolation(f"the z0² stratum does not determine {layout.d(col)}")
        p = candidates[0]
        alpha, rhs = rows[p]
        scale = alpha[col]
        alpha = [a / scale for a in alpha]
        rhs = rhs.scale(QQ.one / scale)
        rows[p] = (alpha, rhs)
        for i, (other, other_rhs) in enumerate(rows):
            if i != p and other[col]:
                factor = other[col]
                rows[i] = ([a - factor * b for a, b in zip(other, alpha)], other_rhs - rhs.scale(factor))
        pivot_rows[col] = p

    d_exprs = {layout.d(col): -rows[p][1] for col, p in pivot_rows.items()}
    residual = [rhs for i, (alpha, rhs) in enumerate(rows) if i not in pivot_rows.values() and rhs]
    quadratics = echelon_polynomials(min_generators(residual)) if residual else []
    for g in quadratics:
        if g.degree() != 2 or not g.is_homogeneous():
            raise InternalContradiction(f"relation {g} is not a homogeneous quadric")
    log.info("step 3: %d d expressions, %d quadratic relations", len(d_exprs), len(quadratics))
    return QuadraticStep(d_exprs, tuple(quadratics))


# ── Step 4: cubic consistency ─────────────────────────────────────────────────

@dataclass(frozen=True)
class CubicResidue:
    syzygy: int
    cubic: Polynomial
    residue: Polynomial

    @property
    def ok(self) -> bool:
        return self.residue.is_zero


def relations_basis(layout: UnknownLayout, linear: LinearStep, quadratic: QuadraticStep, degree_bound: int = 3) -> GroebnerBasis:
    gens = list(linear.linear_relations) + list(quadratic.quadratic_relations)
    return buchberger(gens, layout.c_ring(), degree_bound=degree_bound)


def step4_check(system: CoverSystem, linear: LinearStep, quadratic: QuadraticStep, basis: Optional[GroebnerBasis] = None) -> List[CubicResidue]:
    """Cubics from the z0³ stratum with their normal forms modulo the relations."""
    c_ring = system.layout.c_ring()
    basis = basis or relations_basis(system.layout, linear, quadratic)
    subst = _substitution(system, c_ring, linear, quadratic.d_exprs)
    out = []
    for k, mono, coeff in system.stratum(3):
        cubic = substitute(coeff, subst)
        out.append(CubicResidue(k, cubic, normal_form(cubic, basis)))
    bad = sum(1 for r in out if not r.ok)
    log.info("step 4: %d cubics, %d with nonzero residue", len(out), bad)
    return out


# ── Orchestration ─────────────────────────────────────────────────────────────

@dataclass
class CoverRelations:
    problem: CoverProblem
    layout: UnknownLayout
    l: PolyMatrix
    n_subst: Dict[str, Polynomial]
    c_subst: Dict[str, Polynomial]
    linear_relations: Tuple[Polynomial, ...]
    free_c: Tuple[str, ...]
    d_exprs: Dict[str, Polynomial]
    quadratic_relations: Tuple[Polynomial, ...]
    cubic_residues: Tuple[CubicResidue, ...]
    basis: GroebnerBasis

    @property
    def c_ring(self) -> Ring:
        return self.layout.c_ring()

    @property
    def cubics_ok(self) -> bool:
        return all(r.ok for r in self.cubic_residues)

    def c_value(self, name: str) -> Polynomial:
        """A c unknown after the linear relations: itself if free, else its pivot image."""
        return self.c_subst.get(name) or (self.c_ring.gen(name) if name in self.free_c else self.c_ring.zero)

    def C_matrix(self) -> PolyMatrix:
        """m x r matrix of c's with the linear relations applied."""
        ring = self.c_ring
        entries = [self.c_value(self.layout.c(i, j)) for i in range(self.layout.m) for j in range(self.layout.r)]
        return PolyMatrix(ring, self.layout.m, self.layout.r, entries)

    def N_matrix(self) -> PolyMatrix:
        """syzygies x m matrix of n's in the free c's."""
        lay = self.layout
        ring = self.c_ring
        entries = [self.n_subst[lay.n(k, i)] for k in range(lay.n_syz) for i in range(lay.m)]
        return PolyMatrix(ring, lay.n_syz, lay.m, entries)

    def D_vector(self) -> List[Polynomial]:
        return [self.d_exprs[self.layout.d(i)] for i in range(self.layout.m)]

    def complete_point(self, values: Mapping[str, RationalLike]) -> Dict[str, Rational]:
        """Extend values on the free c's to every c via the linear relations."""
        point = {name: to_rational(v) for name, v in values.items()}
        for name in self.free_c:
            point.setdefault(name, QQ.zero)
        for name, expr in self.c_subst.items():
            value = expr.evaluate(point)
            if name in point and point[name] != value:
                raise PreconditionError(f"{name} = {point[name]} violates {name} = {expr}")
            point[name] = value
        return {name: point[name] for name in self.layout.c_names}

    def d_values(self, point: Mapping[str, RationalLike]) -> List[Rational]:
        return [expr.evaluate(point) for expr in self.D_vector()]

    def family(self) -> List[Polynomial]:
        """The deformed generators f_i = q_i - Σ c_ij z_j - d_i(c) over fiber variables and c's."""
        ring = self.layout.family_ring()
        fiber = [ring.gen(v) for v in self.layout.fiber_vars]
        out = []
        for i, qi in enumerate(self.problem.q):
            f = qi.to_ring(ring)
            for j, v in enumerate(fiber):
                f = f - self.c_value(self.layout.c(i, j)).to_ring(ring) * v
            out.append(f - self.d_exprs[self.layout.d(i)].to_ring(ring))
        return out

    def lifted_syzygies(self) -> PolyMatrix:
        """l + N over the family ring (z0 set to 1)."""
        ring = self.layout.family_ring()
        lay = self.layout
        entries = [
            self.l[i, k].to_ring(ring) + self.n_subst[lay.n(k, i)].to_ring(ring)
            for i in range(lay.m)
            for k in range(lay.n_syz)
        ]
        return PolyMatrix(ring, lay.m, lay.n_syz, entries)


def master_identity_residues(system: CoverSystem, rel: CoverRelations) -> List[Tuple[int, Monomial, Polynomial]]:
    """Nonzero normal forms of the coefficients of (q - z̄Cz0 - Dz0²)(l + Nz0)."""
    c_ring = rel.c_ring
    linear = LinearStep(rel.n_subst, rel.c_subst, rel.linear_relations, rel.free_c)
    subst = _substitution(system, c_ring, linear, rel.d_exprs)
    bad = []
    for power in range(4):
        for k, mono, coeff in system.stratum(power):
            residue = normal_form(substitute(coeff, subst), rel.basis)
            if residue:
                bad.append((k, (power,) + tuple(mono), residue))
    return bad


def cover_relations(problem: CoverProblem) -> CoverRelations:
    """Steps 1-4, then certify the product identity before returning."""
    system = build_system(problem)
    linear = step2_eliminate_n(system)
    quadratic = step3_solve_d(system, linear)
    basis = relations_basis(system.layout, linear, quadratic)
    cubics = step4_check(system, linear, quadratic, basis)
    rel = CoverRelations(
        problem=problem,
        layout=system.layout,
        l=system.l,
        n_subst=linear.n_subst,
        c_subst=linear.c_subst,
        linear_relations=linear.linear_relations,
        free_c=linear.free_c,
        d_exprs=quadratic.d_exprs,
        quadratic_relations=quadratic.quadratic_relations,
        cubic_residues=tuple(cubics),
        basis=basis,
    )
    for residue in cubics:
        if not residue.ok:
            raise InternalContradiction(
                f"cubic {residue.cubic} from syzygy {residue.syzygy} is not generated by the quadratic relations"
            )
    bad = master_identity_residues(system, rel)
    if bad:
        k, key, residue = bad[0]
        raise InternalContradiction(f"product identity fails at syzygy {k}, z-exponents {key}: {residue}")
    log.info("cover relations for %s certified", problem.name)
    return rel


# ── Trace-free conditions ─────────────────────────────────────────────────────

def monomial_trace_forms(problem: CoverProblem) -> List[Polynomial]:
    """tr(z_k) = Σ_j c_{idx(z_k z_j), j} when q lists every quadratic monomial."""
    r = problem.r
    ring = problem.fiber_ring
    index: Dict[Monomial, int] = {}
    for i, g in enumerate(problem.q):
        terms = g.terms()
        if len(terms) != 1 or terms[0][1] != 1:
            raise HypothesisViolation("monomial trace forms need q made of monic monomials")
        index[terms[0][0]] = i
    expected = set()
    for a, b in combinations_with_replacement(range(r), 2):
        mono = [0] * r
        mono[a] += 1
        mono[b] += 1
        expected.add(tuple(mono))
    if set(index) != expected:
        raise HypothesisViolation("monomial trace forms need q to be all quadratic monomials")
    c_ring = problem.c_ring
    forms = []
    for k in range(r):
        form = c_ring.zero
        for j in range(r):
            mono = [0] * r
            mono[k] += 1
            mono[j] += 1
            form = form + c_ring.gen(problem.c_name(index[tuple(mono)], j))
        forms.append(form)
    return forms


# ── Fibers ────────────────────────────────────────────────────────────────────

@dataclass
class FiberReport:
    c_point: Dict[str, Rational]
    d_values: List[Rational]
    generators: List[Polynomial]
    dimension: Optional[int]
    reference_dimension: Optional[int]
    betti: List[int]
    reference_betti: List[int]
    initial_matches: bool
    resolution: Resolution

    @property
    def ok(self) -> bool:
        return (
            self.dimension == self.reference_dimension
            and self.betti == self.reference_betti
            and self.initial_matches
            and not self.resolution.truncated
        )


def verify_fiber(
    problem: CoverProblem,
    rel: CoverRelations,
    c_point: Mapping[str, RationalLike],
    max_steps: int = 8,
) -> FiberReport:
    """Specialize the family at a point of V(I_q) and compare with the undeformed cone."""
    point = rel.complete_point(c_point)
    for g in list(rel.linear_relations) + list(rel.quadratic_relations):
        if g.evaluate(point):
            raise PreconditionError(f"c point violates the relation {g} = 0")
    ring = problem.fiber_ring
    family = rel.family()
    gens = [f.specialize(point).to_ring(ring) for f in family]
    d_vals = rel.d_values(point)

    basis = buchberger(gens, ring)
    dimension = standard_monomials(basis).dimension
    reference_dimension = standard_monomials(buchberger(list(problem.q), ring)).dimension

    z0 = _fresh("z0", problem.fiber_vars)
    hring = Ring([z0, *problem.fiber_vars], "degrevlex")
    homog = [homogenize(g.to_ring(hring), z0, 2) for g in gens]
    resolution = free_resolution(Ideal(hring, homog), max_steps)
    reference = free_resolution(Ideal(hring, [g.to_ring(hring) for g in problem.q]), max_steps)

    initial = initial_ideal(Ideal(ring, gens))
    matches = ideal_equal(initial, Ideal(ring, problem.q))
    log.info("fiber: dimension %s, betti %s", dimension, resolution.betti)
    return FiberReport(point, d_vals, gens, dimension, reference_dimension,
                       resolution.betti, reference.betti, matches, resolution)
