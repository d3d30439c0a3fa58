"""Arithmetic over Q(ε), ε a primitive cube root of unity.

ε is an ordinary ring variable; every basis built here carries the relation
ε² + ε + 1, so normal forms compute in Q(ε)[x].
"""

from __future__ import annotations

from typing import List, Sequence

from coverforge.core.groebner import GroebnerBasis, buchberger, normal_form
from coverforge.core.polyring import PolyMatrix, Polynomial, Ring, Substitution


class CycloContext:
    def __init__(self, names: Sequence[str] = (), eps: str = "eps", order: str = "degrevlex"):
        self.ring = Ring([*names, eps], order)
        self.eps_name = eps
        self.eps = self.ring.gen(eps)
        self.relation = self.eps ** 2 + self.eps + 1
        self._field = buchberger([self.relation], self.ring)

    def basis(self, generators: Sequence[Polynomial]) -> GroebnerBasis:
        """Gröbner basis of the ideal extended to Q(ε)."""
        return buchberger([*generators, self.relation], self.ring)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f.to_ring(self.ring), self._field)

    def is_zero(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero

    def power(self, k: int) -> Polynomial:
        return self.reduce(self.eps ** (k % 3))

    def matrix(self, rows: Sequence[Sequence[object]]) -> PolyMatrix:
        return PolyMatrix.from_rows(self.ring, rows)

    def reduce_matrix(self, m: PolyMatrix) -> PolyMatrix:
        return m.map(self.reduce)

    def matrices_equal(self, a: PolyMatrix, b: PolyMatrix) -> bool:
        return (a - b).map(self.reduce).is_zero()

    def matrix_power(self, m: PolyMatrix, k: int) -> PolyMatrix:
        out = PolyMatrix.identity(self.ring, m.rows)
        for _ in range(k):
            out = self.reduce_matrix(out * m)
        return out

    def point_residues(self, generators: Sequence[Polynomial], point: Sequence[Polynomial], names: Sequence[str]) -> List[Polynomial]:
        """Values of ``generators`` at a point with Q(ε) coordinates, reduced."""
        images = {n: v.to_ring(self.ring) for n, v in zip(names, point)}
        subst = Substitution.from_mapping(self.ring, self.ring, images)
        return [self.reduce(subst(g.to_ring(self.ring))) for g in generators]
