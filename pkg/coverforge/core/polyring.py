"""Exact multivariate polynomials over the rationals.

Polynomials are sparse term maps backed by sympy's distributed ``PolyRing``
over ``QQ``. Every polynomial carries its :class:`Ring`, which fixes variable
names and the term order; rings with the same names but different orders are
different rings and never mix silently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, ClassVar, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.orderings import MonomialOrder, grevlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from coverforge.core.errors import ContextError, DegreeError, ParseError, ShapeError

Rational = QQ.dtype
Monomial = Tuple[int, ...]
RationalLike = Union[int, str, Fraction, Rational]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


# ── Rationals ─────────────────────────────────────────────────────────────────

def to_rational(value: RationalLike) -> Rational:
    """Coerce ints, Fractions, ``"a/b"`` strings and QQ elements."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        num, sep, den = value.strip().partition("/")
        try:
            return QQ(int(num), int(den) if sep else 1)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_rational(value: Rational) -> str:
    num, den = int(value.numerator), int(value.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def _is_scalar(value: object) -> bool:
    return isinstance(value, (int, Fraction, Rational)) and not isinstance(value, bool)


# ── Term orders ───────────────────────────────────────────────────────────────

class BlockOrder(MonomialOrder):
    """degrevlex on the first ``split`` exponents, ties broken by degrevlex on the rest."""

    alias = "block"
    is_global = True

    def __init__(self, split: int):
        self.split = split

    def __call__(self, monomial):
        k = self.split
        return (grevlex(monomial[:k]), grevlex(monomial[k:]))

    def __repr__(self) -> str:
        return f"BlockOrder({self.split})"

    def __str__(self) -> str:
        return f"block:{self.split}"

    def __eq__(self, other) -> bool:
        return isinstance(other, BlockOrder) and other.split == self.split

    def __hash__(self) -> int:
        return hash((BlockOrder, self.split))


@dataclass(frozen=True)
class TermOrder:
    """A named monomial order: ``degrevlex``, ``lex`` or ``block:k``."""

    kind: str = "degrevlex"
    split: int = 0

    KINDS: ClassVar[Tuple[str, ...]] = ("degrevlex", "lex", "block")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "block" and self.split < 0:
            raise ValueError("block split must be non-negative")
        if self.kind != "block" and self.split:
            raise ValueError(f"{self.kind} takes no split index")

    @classmethod
    def parse(cls, text: str) -> "TermOrder":
        raw = text.strip()
        if raw in ("degrevlex", "lex"):
            return cls(raw)
        if raw.startswith("block:"):
            try:
                return cls("block", int(raw[len("block:"):]))
            except ValueError:
                pass
        raise ParseError(f"unknown term order {raw!r} (expected degrevlex, lex or block:k)")

    @classmethod
    def coerce(cls, value: Union["TermOrder", str]) -> "TermOrder":
        return value if isinstance(value, TermOrder) else cls.parse(value)

    def monomial_order(self) -> MonomialOrder:
        if self.kind == "degrevlex":
            return grevlex
        if self.kind == "lex":
            return lex
        return BlockOrder(self.split)

    def key(self, monomial: Monomial):
        return self.monomial_order()(monomial)

    def __str__(self) -> str:
        return f"block:{self.split}" if self.kind == "block" else self.kind


# ── Rings ─────────────────────────────────────────────────────────────────────

class Ring:
    """Named variables plus a term order, backed by a sympy ``PolyRing`` over QQ."""

    __slots__ = ("names", "order", "sympy_ring", "_index")

    def __init__(self, names: Iterable[str], order: Union[TermOrder, str] = "degrevlex"):
        names = tuple(names)
        for name in names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names: Tuple[str, ...] = names
        self.order: TermOrder = TermOrder.coerce(order)
        self._index: Dict[str, int] = {name: i for i, name in enumerate(names)}
        self.sympy_ring: PolyRing = PolyRing(names, QQ, self.order.monomial_order())

    @property
    def arity(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self.names == other.names and self.order == other.order

    def __hash__(self) -> int:
        return hash((self.names, self.order))

    def __repr__(self) -> str:
        return f"Ring({' '.join(self.names)} : {self.order})"

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ContextError(f"variable {name!r} is not in {self!r}") from None

    def with_order(self, order: Union[TermOrder, str]) -> "Ring":
        order = TermOrder.coerce(order)
        return self if order == self.order else Ring(self.names, order)

    def gen(self, name: str) -> "Polynomial":
        return Polynomial(self, self.sympy_ring.gens[self.index(name)])

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(Polynomial(self, g) for g in self.sympy_ring.gens)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, self.sympy_ring.zero)

    @property
    def one(self) -> "Polynomial":
        return Polynomial(self, self.sympy_ring.one)

    def constant(self, value: RationalLike) -> "Polynomial":
        return Polynomial(self, self.sympy_ring.ground_new(to_rational(value)))

    def monomial(self, exponents: Monomial, coeff: RationalLike = 1) -> "Polynomial":
        return self.from_terms([(tuple(exponents), coeff)])

    def from_terms(self, terms: Iterable[Tuple[Monomial, RationalLike]]) -> "Polynomial":
        acc: Dict[Monomial, Rational] = {}
        for monom, coeff in terms:
            if len(monom) != self.arity:
                raise ShapeError(f"monomial {monom} does not fit {self!r}")
            acc[monom] = acc.get(monom, QQ.zero) + to_rational(coeff)
        return Polynomial(self, self.sympy_ring.from_dict({m: c for m, c in acc.items() if c}))

    def parse(self, text: str) -> "Polynomial":
        from coverforge.core.parser import parse_polynomial

        return parse_polynomial(text, self)


# ── Polynomials ───────────────────────────────────────────────────────────────

class Polynomial:
    """Immutable polynomial; terms are kept sorted under the ring's order."""

    __slots__ = ("ring", "rep")

    def __init__(self, ring: Ring, rep: PolyElement):
        self.ring = ring
        self.rep = rep

    # ── structure ──

    def terms(self) -> List[Tuple[Monomial, Rational]]:
        """(monomial, coefficient) pairs, strictly descending."""
        return self.rep.terms()

    def monomials(self) -> List[Monomial]:
        return [m for m, _ in self.terms()]

    def coefficient(self, monomial: Monomial) -> Rational:
        return self.rep.get(tuple(monomial), QQ.zero)

    @property
    def is_zero(self) -> bool:
        return not self.rep

    def __bool__(self) -> bool:
        return bool(self.rep)

    @property
    def is_constant(self) -> bool:
        return all(not any(m) for m in self.rep)

    @property
    def constant_term(self) -> Rational:
        return self.rep.get(self.ring.sympy_ring.zero_monom, QQ.zero)

    @property
    def leading_monomial(self) -> Monomial:
        return self.rep.LM

    @property
    def leading_coefficient(self) -> Rational:
        return self.rep.LC

    def leading_term(self) -> "Polynomial":
        return Polynomial(self.ring, self.rep.leading_term())

    def _axes(self, names: Optional[Sequence[str]]) -> List[int]:
        if names is None:
            return list(range(self.ring.arity))
        return [self.ring.index(n) for n in names]

    def degree(self, names: Optional[Sequence[str]] = None) -> int:
        """Total degree in ``names`` (all variables by default); -1 for zero."""
        axes = self._axes(names)
        return max((sum(m[i] for i in axes) for m in self.rep), default=-1)

    def is_homogeneous(self, names: Optional[Sequence[str]] = None) -> bool:
        axes = self._axes(names)
        return len({sum(m[i] for i in axes) for m in self.rep}) <= 1

    def homogeneous_part(self, degree: int, names: Optional[Sequence[str]] = None) -> "Polynomial":
        axes = self._axes(names)
        kept = {m: c for m, c in self.rep.items() if sum(m[i] for i in axes) == degree}
        return Polynomial(self.ring, self.ring.sympy_ring.from_dict(kept))

    def variables(self) -> Tuple[str, ...]:
        used = [False] * self.ring.arity
        for monom in self.rep:
            for i, e in enumerate(monom):
                if e:
                    used[i] = True
        return tuple(n for n, u in zip(self.ring.names, used) if u)

    def collect(self, names: Sequence[str]) -> Dict[Monomial, "Polynomial"]:
        """Split into coefficients of monomials in ``names``.

        Keys are exponent tuples over ``names``; values are polynomials of the
        same ring with those variables removed.
        """
        axes = [self.ring.index(n) for n in names]
        groups: Dict[Monomial, Dict[Monomial, Rational]] = {}
        for monom, coeff in self.rep.items():
            key = tuple(monom[i] for i in axes)
            rest = list(monom)
            for i in axes:
                rest[i] = 0
            groups.setdefault(key, {})[tuple(rest)] = coeff
        from_dict = self.ring.sympy_ring.from_dict
        return {key: Polynomial(self.ring, from_dict(terms)) for key, terms in groups.items()}

    # ── arithmetic ──

    def _coerce(self, other) -> Optional[PolyElement]:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ContextError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other.rep
        if _is_scalar(other):
            return self.ring.sympy_ring.ground_new(to_rational(other))
        return None

    def __add__(self, other):
        rep = self._coerce(other)
        return NotImplemented if rep is None else Polynomial(self.ring, self.rep + rep)

    __radd__ = __add__

    def __sub__(self, other):
        rep = self._coerce(other)
        return NotImplemented if rep is None else Polynomial(self.ring, self.rep - rep)

    def __rsub__(self, other):
        rep = self._coerce(other)
        return NotImplemented if rep is None else Polynomial(self.ring, rep - self.rep)

    def __mul__(self, other):
        rep = self._coerce(other)
        return NotImplemented if rep is None else Polynomial(self.ring, self.rep * rep)

    __rmul__ = __mul__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, -self.rep)

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        return Polynomial(self.ring, self.rep ** exponent)

    def scale(self, factor: RationalLike) -> "Polynomial":
        return Polynomial(self.ring, self.rep.mul_ground(to_rational(factor)))

    def monic(self) -> "Polynomial":
        return Polynomial(self.ring, self.rep.monic())

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.rep == other.rep
        if _is_scalar(other):
            return self.rep == self.ring.sympy_ring.ground_new(to_rational(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.rep.items())))

    # ── evaluation and ring changes ──

    def specialize(self, values: Mapping[str, RationalLike]) -> "Polynomial":
        """Set the named variables to rationals, staying in the same ring."""
        fixed = {self.ring.index(n): to_rational(v) for n, v in values.items()}
        acc: Dict[Monomial, Rational] = {}
        for monom, coeff in self.rep.items():
            rest = list(monom)
            for i, value in fixed.items():
                if monom[i]:
                    coeff = coeff * value ** monom[i]
                    rest[i] = 0
            key = tuple(rest)
            acc[key] = acc.get(key, QQ.zero) + coeff
        return Polynomial(self.ring, self.ring.sympy_ring.from_dict({m: c for m, c in acc.items() if c}))

    def evaluate(self, values: Mapping[str, RationalLike]) -> Rational:
        reduced = self.specialize({n: v for n, v in values.items() if n in self.ring})
        if not reduced.is_constant:
            missing = ", ".join(reduced.variables())
            raise ContextError(f"no value for {missing}")
        return reduced.constant_term

    def to_ring(self, target: Ring) -> "Polynomial":
        """Reinterpret in ``target`` by variable name."""
        if target == self.ring:
            return self
        positions = [target._index.get(name) for name in self.ring.names]
        terms: Dict[Monomial, Rational] = {}
        for monom, coeff in self.rep.items():
            new = [0] * target.arity
            for i, e in enumerate(monom):
                if e:
                    pos = positions[i]
                    if pos is None:
                        raise ContextError(f"variable {self.ring.names[i]!r} does not exist in {target!r}")
                    new[pos] = e
            terms[tuple(new)] = coeff
        return Polynomial(target, target.sympy_ring.from_dict(terms))

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)})"


# ── Printing ──────────────────────────────────────────────────────────────────

def format_monomial(monomial: Monomial, names: Sequence[str]) -> str:
    factors = []
    for name, e in zip(names, monomial):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: descending terms, ``a/b`` rationals, ``*`` and ``^``."""
    if f.is_zero:
        return "0"
    out: List[str] = []
    for monom, coeff in f.terms():
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        mono = format_monomial(monom, f.ring.names)
        if not mono:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{format_rational(magnitude)}*{mono}"
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(out)


# ── Substitutions ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Substitution:
    """Ring homomorphism ``domain -> codomain`` given by variable images.

    Variables without an explicit image go to the same-named codomain variable.
    """

    domain: Ring
    codomain: Ring
    images: Tuple[Tuple[str, Polynomial], ...]

    @classmethod
    def from_mapping(
        cls,
        domain: Ring,
        codomain: Ring,
        mapping: Mapping[str, Union[Polynomial, str, RationalLike]],
    ) -> "Substitution":
        images = []
        for name, image in mapping.items():
            domain.index(name)
            if isinstance(image, Polynomial):
                image = image.to_ring(codomain)
            elif isinstance(image, str):
                image = codomain.parse(image)
            else:
                image = codomain.constant(image)
            images.append((name, image))
        return cls(domain, codomain, tuple(images))

    @classmethod
    def identity(cls, ring: Ring) -> "Substitution":
        return cls(ring, ring, ())

    def image(self, name: str) -> Optional[Polynomial]:
        for key, value in self.images:
            if key == name:
                return value
        return None

    def __call__(self, f: Polynomial) -> Polynomial:
        return substitute(f, self)


def substitute(f: Polynomial, s: Substitution) -> Polynomial:
    if f.ring != s.domain:
        raise ContextError(f"substitution expects {s.domain!r}, got {f.ring!r}")
    codomain = s.codomain
    explicit = dict(s.images)
    images: List[Optional[PolyElement]] = []
    for name in s.domain.names:
        if name in explicit:
            images.append(explicit[name].rep)
        elif name in codomain:
            images.append(codomain.gen(name).rep)
        else:
            images.append(None)

    target = codomain.sympy_ring
    powers: Dict[Tuple[int, int], PolyElement] = {}
    result = target.zero
    for monom, coeff in f.rep.items():
        term = target.ground_new(coeff)
        for i, e in enumerate(monom):
            if not e:
                continue
            base = images[i]
            if base is None:
                raise ContextError(f"variable {s.domain.names[i]!r} has no image in {codomain!r}")
            power = powers.get((i, e))
            if power is None:
                power = powers[(i, e)] = base ** e
            term = term * power
        result = result + term
    return Polynomial(codomain, result)


def homogenize(
    f: Polynomial,
    new_var: str,
    target_degree: int,
    wrt: Optional[Sequence[str]] = None,
) -> Polynomial:
    """Pad each term with ``new_var`` up to ``target_degree``.

    Degrees are measured in ``wrt`` (every variable except ``new_var`` by
    default), so parameters can ride along as coefficients.
    """
    ring = f.ring
    k = ring.index(new_var)
    if wrt is None:
        axes = [i for i in range(ring.arity) if i != k]
    else:
        axes = [ring.index(n) for n in wrt]
    degree = max((sum(m[i] for i in axes) for m in f.rep), default=0)
    if target_degree < degree:
        raise DegreeError(f"cannot homogenize degree {degree} polynomial to degree {target_degree}")
    terms = []
    for monom, coeff in f.rep.items():
        lifted = list(monom)
        lifted[k] += target_degree - sum(monom[i] for i in axes)
        terms.append((tuple(lifted), coeff))
    return ring.from_terms(terms)


# ── Matrices ──────────────────────────────────────────────────────────────────

Entry = Union[Polynomial, str, RationalLike]


class PolyMatrix:
    """Dense matrix of polynomials over one ring, stored row-major."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: Ring, rows: int, cols: int, entries: Iterable[Polynomial]):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ShapeError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        for entry in entries:
            if entry.ring != ring:
                raise ContextError(f"matrix entry from {entry.ring!r}, expected {ring!r}")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @staticmethod
    def _entry(ring: Ring, value: Entry) -> Polynomial:
        if isinstance(value, Polynomial):
            return value.to_ring(ring)
        if isinstance(value, str):
            return ring.parse(value)
        return ring.constant(value)

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence[Entry]]) -> "PolyMatrix":
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ShapeError("ragged rows")
        cols = widths.pop() if widths else 0
        return cls(ring, len(rows), cols, [cls._entry(ring, v) for row in rows for v in row])

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> "PolyMatrix":
        return cls(ring, rows, cols, [ring.zero] * (rows * cols))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "PolyMatrix":
        return cls(ring, n, n, [ring.one if i == j else ring.zero for i in range(n) for j in range(n)])

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: Tuple[int, int]) -> Polynomial:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Polynomial, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple[Polynomial, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.cols, self.rows,
                          [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def map(self, fn: Callable[[Polynomial], Polynomial], ring: Optional[Ring] = None) -> "PolyMatrix":
        return PolyMatrix(ring or self.ring, self.rows, self.cols, [fn(e) for e in self.entries])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def _check_same_shape(self, other: "PolyMatrix") -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch: {self.shape} vs {other.shape}")
        if self.ring != other.ring:
            raise ContextError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same_shape(other)
        return PolyMatrix(self.ring, self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same_shape(other)
        return PolyMatrix(self.ring, self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda e: -e)

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            return mat_mul(self, other)
        if isinstance(other, Polynomial) or _is_scalar(other):
            return self.map(lambda e: e * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Polynomial) or _is_scalar(other):
            return self.map(lambda e: other * e)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.ring, self.shape, self.entries))

    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.entries)

    def is_skew_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self[i, j] == -self[j, i]
            for i in range(self.rows)
            for j in range(i, self.cols)
        )

    def det(self) -> Polynomial:
        """Determinant by cofactor expansion with memoized minors."""
        if self.rows != self.cols:
            raise ShapeError(f"determinant of a non-square {self.rows}x{self.cols} matrix")
        n = self.rows
        reps = [[self[i, j].rep for j in range(n)] for i in range(n)]
        one = self.ring.sympy_ring.one

        @lru_cache(maxsize=None)
        def minor(row: int, cols: Tuple[int, ...]) -> PolyElement:
            if row == n:
                return one
            total = self.ring.sympy_ring.zero
            for pos, col in enumerate(cols):
                entry = reps[row][col]
                if not entry:
                    continue
                rest = minor(row + 1, cols[:pos] + cols[pos + 1:])
                term = entry * rest
                total = total - term if pos % 2 else total + term
            return total

        return Polynomial(self.ring, minor(0, tuple(range(n))))

    def __str__(self) -> str:
        return format_matrix(self)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols} over {self.ring!r})"


def mat_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    if a.ring != b.ring:
        raise ContextError(f"ring mismatch: {a.ring!r} vs {b.ring!r}")
    zero = a.ring.sympy_ring.zero
    entries = []
    for i in range(a.rows):
        row = [a[i, k].rep for k in range(a.cols)]
        for j in range(b.cols):
            acc = zero
            for k, left in enumerate(row):
                right = b[k, j].rep
                if left and right:
                    acc = acc + left * right
            entries.append(Polynomial(a.ring, acc))
    return PolyMatrix(a.ring, a.rows, b.cols, entries)


def pfaffian4(m: PolyMatrix) -> Polynomial:
    """Pf = m12*m34 - m13*m24 + m14*m23 of a 4x4 skew-symmetric matrix."""
    if m.shape != (4, 4):
        raise ShapeError(f"pfaffian4 needs a 4x4 matrix, got {m.rows}x{m.cols}")
    if not m.is_skew_symmetric():
        raise ShapeError("pfaffian4 needs a skew-symmetric matrix")
    return m[0, 1] * m[2, 3] - m[0, 2] * m[1, 3] + m[0, 3] * m[1, 2]


def format_matrix(m: PolyMatrix) -> str:
    """Row-major text with columns padded to a common width."""
    cells = [[str(e) for e in m.row(i)] for i in range(m.rows)]
    widths = [max((len(cells[i][j]) for i in range(m.rows)), default=0) for j in range(m.cols)]
    lines = []
    for row in cells:
        padded = "  ".join(cell.rjust(width) for cell, width in zip(row, widths))
        lines.append(f"[ {padded} ]")
    return "\n".join(lines)
