"""Gröbner bases, normal forms and the ideal-level operations built on them.

The Buchberger loop follows the Gebauer-Möller bookkeeping (normal selection,
chain and product criteria) over sympy ``PolyElement`` values. Module bases
reuse the same loop with positions encoded as leading unit variables, see
:mod:`coverforge.core.modules`.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.groebnertools import spoly
from sympy.polys.monomials import monomial_divides
from sympy.polys.rings import PolyElement, PolyRing

from coverforge.core.errors import ContextError, UnsupportedError
from coverforge.core.linalg import IncrementalBasis, same_span
from coverforge.core.polyring import Monomial, Polynomial, Rational, Ring, TermOrder

log = logging.getLogger(__name__)


# ── Engine ────────────────────────────────────────────────────────────────────

def _position(monomial: Monomial, positions: int) -> Optional[int]:
    for i in range(positions):
        if monomial[i]:
            return i
    return None


def _interreduce_input(polys: List[PolyElement]) -> List[PolyElement]:
    current = [p.monic() for p in polys if p]
    while True:
        nxt = []
        for i, p in enumerate(current):
            r = p.rem(current[:i]) if i else p
            if r:
                nxt.append(r.monic())
        if nxt == current:
            return current
        current = nxt


def _buchberger(
    polys: Sequence[PolyElement],
    sring: PolyRing,
    positions: int = 0,
    degree_bound: Optional[int] = None,
) -> Tuple[List[PolyElement], bool]:
    """Reduced Gröbner basis of ``polys``; returns (basis, truncated).

    With ``positions`` > 0 the first ``positions`` variables mark module
    components and pairs with leading terms in different components are never
    formed. With ``degree_bound`` pairs whose lcm exceeds the bound are skipped
    and ``truncated`` reports whether anything was skipped.
    """
    order = sring.order
    monomial_mul = sring.monomial_mul
    monomial_div = sring.monomial_div
    monomial_lcm = sring.monomial_lcm
    truncated = False

    f = list(polys)
    if degree_bound is not None:
        kept = [p for p in f if not p or max(sum(m) for m in p) <= degree_bound]
        truncated = len(kept) != len(f)
        f = kept
    f = _interreduce_input(f)
    if not f:
        return [], truncated

    index: Dict[PolyElement, int] = {}
    for i, h in enumerate(f):
        index[h] = i

    def pos_of(i: int) -> Optional[int]:
        return _position(f[i].LM, positions)

    def pair_key(pair: Tuple[int, int]):
        lcm = monomial_lcm(f[pair[0]].LM, f[pair[1]].LM)
        return (sum(lcm), order(lcm), pair)

    def normal(g: PolyElement, basis: List[int]) -> Optional[Tuple[Monomial, int]]:
        h = g.rem([f[j] for j in basis]) if basis else g
        if not h:
            return None
        h = h.monic()
        if h not in index:
            index[h] = len(f)
            f.append(h)
        return h.LM, index[h]

    def update(G: Set[int], B: Set[Tuple[int, int]], ih: int):
        h = f[ih]
        mh = h.LM
        ph = _position(mh, positions)

        C = {ig for ig in G if pos_of(ig) == ph}
        D = set()
        while C:
            ig = C.pop()
            mg = f[ig].LM
            lcm_hg = monomial_lcm(mh, mg)

            def lcm_divides(ip: int) -> bool:
                return monomial_div(lcm_hg, monomial_lcm(mh, f[ip].LM)) is not None

            if monomial_mul(mh, mg) == lcm_hg or (
                not any(lcm_divides(ipx) for ipx in C)
                and not any(lcm_divides(pr[1]) for pr in D)
            ):
                D.add((ih, ig))

        E = set()
        while D:
            ih_, ig = D.pop()
            mg = f[ig].LM
            if monomial_mul(mh, mg) != monomial_lcm(mh, mg):
                E.add((ih_, ig))

        B_new = set()
        while B:
            ig1, ig2 = B.pop()
            mg1, mg2 = f[ig1].LM, f[ig2].LM
            lcm12 = monomial_lcm(mg1, mg2)
            if (
                monomial_div(lcm12, mh) is None
                or monomial_lcm(mg1, mh) == lcm12
                or monomial_lcm(mg2, mh) == lcm12
            ):
                B_new.add((ig1, ig2))
        B_new |= E

        G_new = {ig for ig in G if monomial_div(f[ig].LM, mh) is None}
        G_new.add(ih)
        return G_new, B_new

    F = set(range(len(f)))
    G: Set[int] = set()
    CP: Set[Tuple[int, int]] = set()
    while F:
        ih = min(F, key=lambda i: (order(f[i].LM), i))
        F.remove(ih)
        G, CP = update(G, CP, ih)

    pairs = zero_reductions = 0
    while CP:
        pair = min(CP, key=pair_key)
        CP.remove(pair)
        ig1, ig2 = pair
        if degree_bound is not None and pair_key(pair)[0] > degree_bound:
            truncated = True
            continue
        pairs += 1
        s = spoly(f[ig1], f[ig2], sring)
        basis = sorted(G, key=lambda g: order(f[g].LM))
        reduced = normal(s, basis)
        if reduced is None:
            zero_reductions += 1
        else:
            G, CP = update(G, CP, reduced[1])

    final = set()
    for ig in G:
        reduced = normal(f[ig], sorted(G - {ig}))
        if reduced is not None:
            final.add(reduced[1])
    result = sorted((f[ig] for ig in final), key=lambda p: order(p.LM), reverse=True)
    log.debug("buchberger: %d pairs, %d to zero, basis size %d", pairs, zero_reductions, len(result))
    return result, truncated


# ── Ideals and bases ──────────────────────────────────────────────────────────

def _check_ring(ring: Ring, polys: Iterable[Polynomial]) -> None:
    for p in polys:
        if p.ring != ring:
            raise ContextError(f"generator from {p.ring!r}, expected {ring!r}")


class Ideal:
    """Ideal given by generators; zero generators are dropped."""

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = ()):
        generators = tuple(generators)
        _check_ring(ring, generators)
        self.ring = ring
        self.generators: Tuple[Polynomial, ...] = tuple(g for g in generators if g)
        self._basis: Optional[GroebnerBasis] = None

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f"Ideal({', '.join(str(g) for g in self.generators)})"

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def is_homogeneous(self, names: Optional[Sequence[str]] = None) -> bool:
        return all(g.is_homogeneous(names) for g in self.generators)

    def with_order(self, order: Union[TermOrder, str]) -> "Ideal":
        target = self.ring.with_order(order)
        return Ideal(target, [g.to_ring(target) for g in self.generators])

    def groebner(self) -> "GroebnerBasis":
        if self._basis is None:
            self._basis = buchberger(self.generators, self.ring)
        return self._basis

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self.groebner()).is_zero

    def __contains__(self, f: Polynomial) -> bool:
        return self.contains(f)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic, sorted descending by leading monomial."""

    ring: Ring
    elements: Tuple[Polynomial, ...]
    truncated: bool = False
    degree_bound: Optional[int] = None
    positions: int = 0
    _reps: Tuple[PolyElement, ...] = field(default=(), repr=False, compare=False)

    @classmethod
    def from_reps(
        cls,
        ring: Ring,
        reps: Sequence[PolyElement],
        truncated: bool = False,
        degree_bound: Optional[int] = None,
        positions: int = 0,
    ) -> "GroebnerBasis":
        return cls(ring, tuple(Polynomial(ring, r) for r in reps), truncated, degree_bound, positions, tuple(reps))

    @property
    def order(self) -> TermOrder:
        return self.ring.order

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial for g in self.elements]

    @property
    def is_unit(self) -> bool:
        return any(g.is_constant for g in self.elements)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.elements)


def buchberger(
    generators: Union[Ideal, Sequence[Polynomial]],
    ring: Optional[Ring] = None,
    degree_bound: Optional[int] = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis of an ideal under its ring's term order.

    ``degree_bound`` requires homogeneous generators; the result then agrees
    with the full basis in every degree up to the bound.
    """
    if isinstance(generators, Ideal):
        ring = ring or generators.ring
        generators = generators.generators
    generators = list(generators)
    if ring is None:
        if not generators:
            raise ContextError("cannot infer a ring from an empty generator list")
        ring = generators[0].ring
    _check_ring(ring, generators)
    if degree_bound is not None and not all(g.is_homogeneous() for g in generators):
        raise UnsupportedError("degree-bounded Gröbner bases need homogeneous generators")
    if ring.arity == 0:
        unit = any(g for g in generators)
        return GroebnerBasis(ring, (ring.one,) if unit else (), _reps=(ring.one.rep,) if unit else ())
    reps, truncated = _buchberger([g.rep for g in generators], ring.sympy_ring, degree_bound=degree_bound)
    return GroebnerBasis.from_reps(ring, reps, truncated, degree_bound)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Full reduction of ``f`` by ``G``; zero iff ``f`` lies in the ideal."""
    if f.ring != G.ring:
        raise ContextError(f"normal form of {f.ring!r} element against basis over {G.ring!r}")
    if not G.elements or not f:
        return f
    return Polynomial(f.ring, f.rep.rem(list(G._reps)))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.ring != g.ring:
        raise ContextError(f"ring mismatch: {f.ring!r} vs {g.ring!r}")
    return Polynomial(f.ring, spoly(f.rep.monic(), g.rep.monic(), f.ring.sympy_ring))


def is_groebner(polys: Sequence[Polynomial]) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    reps = [p.rep for p in polys if p]
    if not reps:
        return True
    sring = polys[0].ring.sympy_ring
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            if spoly(reps[i].monic(), reps[j].monic(), sring).rem(reps):
                return False
    return True


def is_reduced(polys: Sequence[Polynomial]) -> bool:
    """Monic, a Gröbner basis, and no term divisible by another element's leading monomial."""
    if not is_groebner(polys):
        return False
    for i, g in enumerate(polys):
        if not g or g.leading_coefficient != QQ.one:
            return False
        for j, h in enumerate(polys):
            if i != j and any(monomial_divides(h.leading_monomial, m) for m in g.rep):
                return False
    return True


# ── Minimal generators ────────────────────────────────────────────────────────

def min_generators(generators: Sequence[Polynomial]) -> List[Polynomial]:
    """Graded minimal generating subset, in input order.

    Generators are processed by degree; one is dropped when its normal form
    modulo the lower-degree survivors is a linear combination of the normal
    forms already kept in its own degree.
    """
    gens = [g for g in generators if g]
    if not gens:
        return []
    ring = gens[0].ring
    _check_ring(ring, gens)
    if not all(g.is_homogeneous() for g in gens):
        raise UnsupportedError("minimal generators are only defined for homogeneous input")

    key = ring.order.monomial_order()
    by_degree: Dict[int, List[int]] = {}
    for i, g in enumerate(gens):
        by_degree.setdefault(g.degree(), []).append(i)

    kept: List[int] = []
    for degree in sorted(by_degree):
        lower = [gens[i] for i in kept]
        basis = buchberger(lower, ring, degree_bound=degree) if lower else None
        span = IncrementalBasis()
        for i in by_degree[degree]:
            residue = normal_form(gens[i], basis) if basis else gens[i]
            if span.add(dict(residue.rep), key):
                kept.append(i)
    kept.sort()
    log.debug("min_generators: kept %d of %d", len(kept), len(gens))
    return [gens[i] for i in kept]


# ── Ideal comparisons ─────────────────────────────────────────────────────────

def _single_degree(ideal: Ideal) -> Optional[int]:
    degrees = {g.degree() for g in ideal.generators}
    if len(degrees) == 1 and ideal.is_homogeneous():
        return degrees.pop()
    return None


def ideal_witness(I: Ideal, J: Ideal) -> Optional[Tuple[str, Polynomial]]:
    """First generator separating the ideals: (``"left"``|``"right"``, g), or None."""
    if I.ring != J.ring:
        raise ContextError(f"cannot compare ideals over {I.ring!r} and {J.ring!r}")
    GI, GJ = I.groebner(), J.groebner()
    for g in I.generators:
        if normal_form(g, GJ):
            return ("left", g)
    for g in J.generators:
        if normal_form(g, GI):
            return ("right", g)
    return None


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise ContextError(f"cannot compare ideals over {I.ring!r} and {J.ring!r}")
    if I.is_zero or J.is_zero:
        return I.is_zero and J.is_zero
    dI, dJ = _single_degree(I), _single_degree(J)
    if dI is not None and dI == dJ:
        return same_span(I.generators, J.generators)
    return ideal_witness(I, J) is None


# ── Elimination and initial ideals ────────────────────────────────────────────

def _front_ring(ring: Ring, front: Sequence[str]) -> Ring:
    rest = [n for n in ring.names if n not in front]
    return Ring(list(front) + rest, TermOrder("block", len(front)))


def eliminate(I: Ideal, names: Sequence[str]) -> Ideal:
    """I ∩ k[remaining variables], as an ideal in the ring of those variables."""
    for n in names:
        I.ring.index(n)
    names = [n for n in I.ring.names if n in set(names)]
    k = len(names)
    rest = [n for n in I.ring.names if n not in set(names)]
    order = I.ring.order if I.ring.order.kind != "block" else TermOrder()
    target = Ring(rest, order)
    if k == 0:
        return Ideal(target, [g.to_ring(target) for g in I.generators])

    work = _front_ring(I.ring, names)
    basis = buchberger([g.to_ring(work) for g in I.generators], work)
    survivors = [g for g in basis if not any(m[:k] != (0,) * k for m in g.rep)]
    log.debug("eliminate %s: %d of %d basis elements survive", ",".join(names), len(survivors), len(basis))
    if not rest:
        return Ideal(target, [target.one] if survivors else [])
    return Ideal(target, [g.to_ring(target) for g in survivors])


def initial_ideal(I: Ideal, names: Optional[Sequence[str]] = None) -> Ideal:
    """Top-degree parts (in ``names``) of a Gröbner basis refining that degree."""
    names = list(I.ring.names if names is None else names)
    for n in names:
        I.ring.index(n)
    work = _front_ring(I.ring, names)
    basis = buchberger([g.to_ring(work) for g in I.generators], work)
    tops = [g.homogeneous_part(g.degree(names), names).to_ring(I.ring) for g in basis]
    return Ideal(I.ring, tops)


# ── Zero-dimensional quotients ────────────────────────────────────────────────

@dataclass(frozen=True)
class StandardMonomials:
    """Monomials outside the leading-term ideal; ``finite`` False means infinitely many."""

    monomials: Tuple[Monomial, ...]
    finite: bool

    @property
    def dimension(self) -> Optional[int]:
        return len(self.monomials) if self.finite else None


def standard_monomials(G: GroebnerBasis) -> StandardMonomials:
    ring = G.ring
    leads = G.leading_monomials()
    if any(not any(m) for m in leads):
        return StandardMonomials((), True)
    n = ring.arity
    for i in range(n):
        if not any(m[i] and sum(m) == m[i] for m in leads):
            return StandardMonomials((), False)

    def divisible(m: Monomial) -> bool:
        return any(monomial_divides(lead, m) for lead in leads)

    start = (0,) * n
    seen = {start}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        for i in range(n):
            nxt = m[:i] + (m[i] + 1,) + m[i + 1:]
            if nxt not in seen and not divisible(nxt):
                seen.add(nxt)
                queue.append(nxt)
    key = ring.order.monomial_order()
    return StandardMonomials(tuple(sorted(seen, key=key)), True)


def quotient_dimension(I: Ideal) -> Optional[int]:
    return standard_monomials(I.groebner()).dimension


def multiplication_matrix(G: GroebnerBasis, f: Polynomial, basis: Sequence[Monomial]) -> List[List[Rational]]:
    """Matrix of multiplication by ``f`` on the quotient, columns indexed by ``basis``."""
    ring = G.ring
    position = {m: i for i, m in enumerate(basis)}
    matrix = [[QQ.zero] * len(basis) for _ in basis]
    for j, b in enumerate(basis):
        image = normal_form(f * ring.monomial(b), G)
        for m, c in image.rep.items():
            if m not in position:
                raise UnsupportedError(f"normal form left the standard basis at {m}")
            matrix[position[m]][j] = c
    return matrix


def trace(G: GroebnerBasis, f: Polynomial) -> Rational:
    sm = standard_monomials(G)
    if not sm.finite:
        raise UnsupportedError("trace needs a zero-dimensional ideal")
    matrix = multiplication_matrix(G, f, sm.monomials)
    return sum((matrix[i][i] for i in range(len(matrix))), QQ.zero)
