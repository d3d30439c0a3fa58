"""Exact linear algebra over QQ on coefficient vectors of polynomials."""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.densebasic import dup_degree, dup_strip
from sympy.polys.densetools import dup_diff
from sympy.polys.euclidtools import dup_gcd
from sympy.polys.matrices import DomainMatrix

from coverforge.core.polyring import Monomial, Polynomial, Rational, to_rational

Vector = List[Rational]


def domain_matrix(rows: Sequence[Sequence[Rational]], ncols: int) -> DomainMatrix:
    return DomainMatrix([list(r) for r in rows], (len(rows), ncols), QQ)


def rref(rows: Sequence[Sequence[Rational]], ncols: int) -> Tuple[List[Vector], Tuple[int, ...]]:
    """Reduced row echelon form; zero rows are dropped."""
    if not rows:
        return [], ()
    reduced, pivots = domain_matrix(rows, ncols).rref()
    return [list(r) for r in reduced.to_list()[: len(pivots)]], tuple(pivots)


def rank(rows: Sequence[Sequence[Rational]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def determinant(rows: Sequence[Sequence[Rational]]) -> Rational:
    n = len(rows)
    if n == 0:
        return QQ.one
    return domain_matrix(rows, n).det()


def charpoly(rows: Sequence[Sequence[Rational]]) -> List[Rational]:
    """Characteristic polynomial coefficients, leading coefficient first."""
    return list(domain_matrix(rows, len(rows)).charpoly())


# ── Polynomials as vectors ────────────────────────────────────────────────────

def support(polys: Sequence[Polynomial]) -> List[Monomial]:
    """All monomials appearing in ``polys``, descending under the ring order."""
    if not polys:
        return []
    key = polys[0].ring.order.monomial_order()
    monomials = {m for p in polys for m in p.rep}
    return sorted(monomials, key=key, reverse=True)


def coefficient_rows(polys: Sequence[Polynomial], monomials: Sequence[Monomial]) -> List[Vector]:
    index = {m: i for i, m in enumerate(monomials)}
    rows = []
    for p in polys:
        row = [QQ.zero] * len(monomials)
        for m, c in p.rep.items():
            row[index[m]] = c
        rows.append(row)
    return rows


def echelon_polynomials(polys: Sequence[Polynomial]) -> List[Polynomial]:
    """Canonical basis of the QQ-span of ``polys`` (RREF over descending monomials)."""
    polys = [p for p in polys if p]
    if not polys:
        return []
    ring = polys[0].ring
    monomials = support(polys)
    reduced, _ = rref(coefficient_rows(polys, monomials), len(monomials))
    return [ring.from_terms((m, c) for m, c in zip(monomials, row) if c) for row in reduced]


def same_span(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> bool:
    return echelon_polynomials(a) == echelon_polynomials(b)


class IncrementalBasis:
    """Row echelon basis grown one vector at a time.

    ``add`` reports whether a vector was independent of those already kept.
    """

    def __init__(self) -> None:
        self._rows: Dict[Monomial, Dict[Monomial, Rational]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vector: Dict[Monomial, Rational], key) -> Dict[Monomial, Rational]:
        vec = dict(vector)
        while vec:
            lead = max(vec, key=key)
            row = self._rows.get(lead)
            if row is None:
                return vec
            factor = vec[lead]
            for m, c in row.items():
                value = vec.get(m, QQ.zero) - factor * c
                if value:
                    vec[m] = value
                else:
                    vec.pop(m, None)
        return vec

    def add(self, vector: Dict[Monomial, Rational], key) -> bool:
        vec = self.reduce(vector, key)
        if not vec:
            return False
        lead = max(vec, key=key)
        scale = vec[lead]
        self._rows[lead] = {m: c / scale for m, c in vec.items()}
        return True


def solve_affine(
    rows: Sequence[Sequence[Rational]],
    rhs: Sequence[Rational],
    ncols: int,
) -> Optional[Vector]:
    """One solution of ``rows * x = rhs`` (free variables set to 0), or None."""
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        return None
    x = [QQ.zero] * ncols
    for row, col in zip(reduced, pivots):
        x[col] = row[ncols]
    return x


def is_squarefree(coeffs: Sequence[Rational]) -> bool:
    """True when the univariate polynomial (leading coefficient first) has no repeated root."""
    f = dup_strip([to_rational(c) for c in coeffs])
    if dup_degree(f) <= 0:
        return True
    return dup_degree(dup_gcd(f, dup_diff(f, 1, QQ), QQ)) == 0
