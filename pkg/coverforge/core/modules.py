"""Submodules of free modules: Gröbner bases, syzygies, minimal generators, lifting.

A vector (v_0, ..., v_{p-1}) is encoded as the polynomial Σ v_i·e_i in a ring
with extra position variables e_i placed first under ``block:p``. Degree-one
monomials in the position block compare e_0 > e_1 > ..., so the encoded order
is position-over-term with degrevlex on the coefficients.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from coverforge.core.errors import ContextError, InternalContradiction, ShapeError, UnsupportedError
from coverforge.core.groebner import GroebnerBasis, _buchberger
from coverforge.core.linalg import IncrementalBasis
from coverforge.core.polyring import Polynomial, PolyMatrix, Ring, TermOrder

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FreeModuleElement:
    """A vector of polynomials; the length is the rank of the ambient free module."""

    ring: Ring
    components: Tuple[Polynomial, ...]

    @classmethod
    def of(cls, components: Sequence[Polynomial]) -> "FreeModuleElement":
        if not components:
            raise ShapeError("module element needs at least one component")
        ring = components[0].ring
        for c in components:
            if c.ring != ring:
                raise ContextError(f"component from {c.ring!r}, expected {ring!r}")
        return cls(ring, tuple(components))

    @classmethod
    def unit(cls, ring: Ring, rank: int, position: int) -> "FreeModuleElement":
        return cls(ring, tuple(ring.one if i == position else ring.zero for i in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.components)

    def __getitem__(self, i: int) -> Polynomial:
        return self.components[i]

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def _check(self, other: "FreeModuleElement") -> None:
        if other.ring != self.ring:
            raise ContextError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
        if other.rank != self.rank:
            raise ShapeError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "FreeModuleElement") -> "FreeModuleElement":
        self._check(other)
        return FreeModuleElement(self.ring, tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "FreeModuleElement") -> "FreeModuleElement":
        self._check(other)
        return FreeModuleElement(self.ring, tuple(a - b for a, b in zip(self, other)))

    def __neg__(self) -> "FreeModuleElement":
        return FreeModuleElement(self.ring, tuple(-a for a in self))

    def scale(self, factor) -> "FreeModuleElement":
        return FreeModuleElement(self.ring, tuple(a * factor for a in self))

    def dot(self, gens: Sequence[Polynomial]) -> Polynomial:
        if len(gens) != self.rank:
            raise ShapeError(f"cannot pair rank {self.rank} element with {len(gens)} generators")
        total = self.ring.zero
        for a, g in zip(self.components, gens):
            if a:
                total = total + a * g
        return total

    def combine(self, columns: Sequence["FreeModuleElement"]) -> "FreeModuleElement":
        """Σ self_i · columns_i."""
        if len(columns) != self.rank:
            raise ShapeError(f"cannot combine rank {self.rank} element with {len(columns)} columns")
        if not columns:
            raise ShapeError("no columns to combine")
        total = [self.ring.zero] * columns[0].rank
        for a, col in zip(self.components, columns):
            if a:
                total = [t + a * c for t, c in zip(total, col)]
        return FreeModuleElement(self.ring, tuple(total))

    def degree(self, twists: Optional[Sequence[int]] = None) -> int:
        """Twisted degree; -1 for the zero vector."""
        twists = twists or [0] * self.rank
        return max((c.degree() + t for c, t in zip(self, twists) if c), default=-1)

    def is_homogeneous(self, twists: Optional[Sequence[int]] = None) -> bool:
        twists = twists or [0] * self.rank
        degrees = set()
        for c, t in zip(self, twists):
            if c:
                if not c.is_homogeneous():
                    return False
                degrees.add(c.degree() + t)
        return len(degrees) <= 1

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


# ── Encoding ──────────────────────────────────────────────────────────────────

def _position_names(ring: Ring, rank: int) -> List[str]:
    prefix = "e"
    while any(name.startswith(prefix + "_") for name in ring.names):
        prefix += "e"
    return [f"{prefix}_{i}" for i in range(rank)]


class _Encoding:
    def __init__(self, ring: Ring, rank: int):
        self.ring = ring
        self.rank = rank
        self.mring = Ring(_position_names(ring, rank) + list(ring.names), TermOrder("block", rank))

    def encode(self, v: FreeModuleElement) -> Polynomial:
        if v.ring != self.ring:
            raise ContextError(f"module element from {v.ring!r}, expected {self.ring!r}")
        if v.rank != self.rank:
            raise ShapeError(f"rank {v.rank} element in a rank {self.rank} module")
        srep = self.mring.sympy_ring
        terms = {}
        for i, comp in enumerate(v.components):
            for monom, coeff in comp.rep.items():
                unit = [0] * self.rank
                unit[i] = 1
                terms[tuple(unit) + monom] = coeff
        return Polynomial(self.mring, srep.from_dict(terms))

    def decode(self, p: Polynomial) -> FreeModuleElement:
        parts: List[Dict] = [dict() for _ in range(self.rank)]
        k = self.rank
        for monom, coeff in p.rep.items():
            pos = [i for i in range(k) if monom[i]]
            if len(pos) != 1 or monom[pos[0]] != 1:
                raise ShapeError(f"{p} is not a module element")
            parts[pos[0]][monom[k:]] = coeff
        srep = self.ring.sympy_ring
        return FreeModuleElement(self.ring, tuple(Polynomial(self.ring, srep.from_dict(t)) for t in parts))

    def position(self, p: Polynomial) -> int:
        lead = p.leading_monomial
        for i in range(self.rank):
            if lead[i]:
                return i
        raise ShapeError("zero module element has no position")


@dataclass(frozen=True)
class ModuleGroebnerBasis:
    """Reduced basis of a submodule of R^rank under position-over-term order."""

    ring: Ring
    rank: int
    elements: Tuple[FreeModuleElement, ...]
    encoded: GroebnerBasis

    def __iter__(self) -> Iterator[FreeModuleElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def leading_positions(self) -> List[int]:
        enc = _Encoding(self.ring, self.rank)
        return [enc.position(g) for g in self.encoded.elements]


def _encoding_for(elements: Sequence[FreeModuleElement]) -> _Encoding:
    if not elements:
        raise ShapeError("empty module generator list")
    ring, rank = elements[0].ring, elements[0].rank
    for v in elements:
        if v.ring != ring:
            raise ContextError(f"module element from {v.ring!r}, expected {ring!r}")
        if v.rank != rank:
            raise ShapeError(f"rank mismatch: {v.rank} vs {rank}")
    return _Encoding(ring, rank)


def _module_basis(enc: _Encoding, elements: Sequence[FreeModuleElement]) -> ModuleGroebnerBasis:
    polys = [enc.encode(v) for v in elements if not v.is_zero]
    reps, _ = _buchberger([p.rep for p in polys], enc.mring.sympy_ring, positions=enc.rank)
    encoded = GroebnerBasis.from_reps(enc.mring, reps, positions=enc.rank)
    decoded = tuple(enc.decode(g) for g in encoded.elements)
    return ModuleGroebnerBasis(enc.ring, enc.rank, decoded, encoded)


def module_groebner(elements: Sequence[FreeModuleElement]) -> ModuleGroebnerBasis:
    return _module_basis(_encoding_for(elements), elements)


def module_normal_form(v: FreeModuleElement, G: ModuleGroebnerBasis) -> FreeModuleElement:
    enc = _Encoding(G.ring, G.rank)
    p = enc.encode(v)
    if not G.encoded.elements or not p:
        return v
    return enc.decode(Polynomial(enc.mring, p.rep.rem(list(G.encoded._reps))))


# ── Syzygies ──────────────────────────────────────────────────────────────────

Generators = Union[Sequence[Polynomial], Sequence[FreeModuleElement]]


def _as_elements(gens: Generators) -> List[FreeModuleElement]:
    if gens and isinstance(gens[0], Polynomial):
        return [FreeModuleElement.of([g]) for g in gens]
    return list(gens)


def _raw_syzygies(vs: List[FreeModuleElement]) -> List[FreeModuleElement]:
    ring, p, k = vs[0].ring, vs[0].rank, len(vs)
    zero = ring.zero
    rows = []
    for j, v in enumerate(vs):
        tail = tuple(ring.one if i == j else zero for i in range(k))
        rows.append(FreeModuleElement(ring, v.components + tail))
    enc = _Encoding(ring, p + k)
    basis = _module_basis(enc, rows)
    out = []
    for g, pos in zip(basis.elements, basis.leading_positions()):
        if pos >= p:
            out.append(FreeModuleElement(ring, g.components[p:]))
    return out


def syzygy_module(gens: Generators, twists: Optional[Sequence[int]] = None, minimal: bool = True) -> List[FreeModuleElement]:
    """Generators of {a : Σ a_i·gens_i = 0}.

    Polynomials are treated as rank-one vectors. When every generator is
    homogeneous the result is reduced to a minimal generating set; ``twists``
    are the degrees of the ambient basis of ``gens``.
    """
    vs = _as_elements(gens)
    if not vs:
        raise ShapeError("syzygy_module needs at least one generator")
    _encoding_for(vs)
    ring = vs[0].ring
    live = [j for j, v in enumerate(vs) if not v.is_zero]
    k = len(vs)
    units = [FreeModuleElement.unit(ring, k, j) for j, v in enumerate(vs) if v.is_zero]
    syz = list(units)
    if live:
        inner = _raw_syzygies([vs[j] for j in live])
        for s in inner:
            full = [ring.zero] * k
            for j, c in zip(live, s.components):
                full[j] = c
            syz.append(FreeModuleElement(ring, tuple(full)))

    for s in syz:
        total = s.combine(vs)
        if not total.is_zero:
            raise InternalContradiction(f"syzygy {s} does not annihilate the generators")

    in_twists = list(twists) if twists is not None else [0] * vs[0].rank
    graded = all(v.is_homogeneous(in_twists) for v in vs)
    if minimal and graded and syz:
        out_twists = [v.degree(in_twists) for v in vs]
        syz = module_min_generators(syz, out_twists)
    log.debug("syzygy_module: %d generators, %d syzygies", len(vs), len(syz))
    return syz


def module_min_generators(elements: Sequence[FreeModuleElement], twists: Optional[Sequence[int]] = None) -> List[FreeModuleElement]:
    """Graded minimal generating subset of a submodule, in input order."""
    elems = [v for v in elements if not v.is_zero]
    if not elems:
        return []
    enc = _encoding_for(elems)
    twists = list(twists) if twists is not None else [0] * enc.rank
    if not all(v.is_homogeneous(twists) for v in elems):
        raise UnsupportedError("minimal generators are only defined for homogeneous input")
    key = enc.mring.order.monomial_order()
    by_degree: Dict[int, List[int]] = {}
    for i, v in enumerate(elems):
        by_degree.setdefault(v.degree(twists), []).append(i)

    kept: List[int] = []
    for degree in sorted(by_degree):
        lower = [elems[i] for i in kept]
        basis = _module_basis(enc, lower) if lower else None
        span = IncrementalBasis()
        for i in by_degree[degree]:
            residue = module_normal_form(elems[i], basis) if basis else elems[i]
            if span.add(dict(enc.encode(residue).rep), key):
                kept.append(i)
    kept.sort()
    return [elems[i] for i in kept]


def syzygy_matrix(gens: Sequence[Polynomial], syzygies: Optional[Sequence[FreeModuleElement]] = None) -> PolyMatrix:
    """Columns are the syzygies of ``gens`` (one row per generator)."""
    syz = list(syzygies) if syzygies is not None else syzygy_module(gens)
    ring = gens[0].ring
    if not syz:
        return PolyMatrix.zeros(ring, len(gens), 0)
    return PolyMatrix(ring, len(gens), len(syz), [s[i] for i in range(len(gens)) for s in syz])


# ── Lifting ───────────────────────────────────────────────────────────────────

def lift(f: Polynomial, gens: Sequence[Polynomial]) -> Optional[List[Polynomial]]:
    """Cofactors a with f = Σ a_i·gens_i, or None when f is not in the ideal."""
    if not gens:
        return [] if f.is_zero else None
    ring = gens[0].ring
    if f.ring != ring:
        raise ContextError(f"cannot lift {f.ring!r} element over {ring!r}")
    k = len(gens)
    rows = []
    for j, g in enumerate(gens):
        tail = tuple(ring.one if i == j else ring.zero for i in range(k))
        rows.append(FreeModuleElement(ring, (g,) + tail))
    enc = _Encoding(ring, k + 1)
    basis = _module_basis(enc, rows)
    start = FreeModuleElement(ring, (f,) + (ring.zero,) * k)
    remainder = module_normal_form(start, basis)
    if remainder[0]:
        return None
    cofactors = [-c for c in remainder.components[1:]]
    return cofactors
