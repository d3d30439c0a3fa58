"""Minimal graded free resolutions and Betti tables."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

from coverforge.core.errors import DegreeError, UnsupportedError
from coverforge.core.groebner import Ideal, min_generators
from coverforge.core.modules import FreeModuleElement, syzygy_module
from coverforge.core.polyring import Polynomial, PolyMatrix, Ring, mat_mul

log = logging.getLogger(__name__)


@dataclass
class Resolution:
    """F_0 <- F_1 <- ... with ``maps[k]`` : F_{k+1} -> F_k.

    ``twists[k]`` lists the degrees of the basis of F_k; F_0 is R itself.
    """

    ring: Ring
    maps: List[PolyMatrix]
    twists: List[List[int]]
    truncated: bool = False

    @property
    def betti(self) -> List[int]:
        return [len(t) for t in self.twists]

    @property
    def length(self) -> int:
        return len(self.maps)

    def graded_betti(self) -> Dict[Tuple[int, int], int]:
        """(homological degree, internal degree) -> rank."""
        table: Dict[Tuple[int, int], int] = {}
        for i, degrees in enumerate(self.twists):
            for d in degrees:
                table[(i, d)] = table.get((i, d), 0) + 1
        return table

    def is_complex(self) -> bool:
        for left, right in zip(self.maps, self.maps[1:]):
            if not mat_mul(left, right).is_zero():
                return False
        return True

    def is_minimal(self) -> bool:
        return not any(e and e.is_constant for m in self.maps for e in m.entries)


def _matrix_from_columns(ring: Ring, rows: int, columns: Sequence[FreeModuleElement]) -> PolyMatrix:
    return PolyMatrix(ring, rows, len(columns), [c[i] for i in range(rows) for c in columns])


def _columns(m: PolyMatrix) -> List[FreeModuleElement]:
    return [FreeModuleElement(m.ring, m.column(j)) for j in range(m.cols)]


def free_resolution(ideal: Union[Ideal, Sequence[Polynomial]], max_steps: int = 8) -> Resolution:
    """Minimal graded free resolution of a homogeneous ideal.

    At most ``max_steps`` maps are computed; a resolution cut short sets
    ``truncated`` rather than pretending to be complete.
    """
    if not isinstance(ideal, Ideal):
        gens = list(ideal)
        if not gens:
            raise UnsupportedError("cannot resolve an empty generator list")
        ideal = Ideal(gens[0].ring, gens)
    if not ideal.is_homogeneous():
        raise UnsupportedError("free_resolution needs a homogeneous ideal")
    if max_steps < 1:
        raise DegreeError("max_steps must be at least 1")
    ring = ideal.ring
    twists: List[List[int]] = [[0]]
    maps: List[PolyMatrix] = []
    if ideal.is_zero:
        return Resolution(ring, maps, twists)

    gens = min_generators(ideal.generators)
    maps.append(PolyMatrix(ring, 1, len(gens), gens))
    twists.append([g.degree() for g in gens])
    truncated = False
    while True:
        current = maps[-1]
        syz = syzygy_module(_columns(current), twists=twists[-2])
        if not syz:
            break
        if len(maps) >= max_steps:
            truncated = True
            break
        out_twists = [s.degree(twists[-1]) for s in syz]
        maps.append(_matrix_from_columns(ring, current.cols, syz))
        twists.append(out_twists)
        log.debug("resolution step %d: rank %d", len(maps), len(syz))

    resolution = Resolution(ring, maps, twists, truncated)
    _prune_constants(resolution)
    log.info("betti numbers %s%s", resolution.betti, " (truncated)" if truncated else "")
    return resolution


def _prune_constants(res: Resolution) -> None:
    """Cancel unit entries until no step matrix has a nonzero constant.

    A unit u = d_k[i, j] removes row i and column j of d_k (after clearing
    column j's contribution), row j of d_{k+1} and column i of d_{k-1}.
    """
    changed = True
    while changed:
        changed = False
        for k, m in enumerate(res.maps):
            pivot = next(
                ((i, j) for i in range(m.rows) for j in range(m.cols) if m[i, j] and m[i, j].is_constant),
                None,
            )
            if pivot is None:
                continue
            i, j = pivot
            u = m[i, j].constant_term
            col = m.column(j)
            row = m.row(i)
            keep_rows = [r for r in range(m.rows) if r != i]
            keep_cols = [c for c in range(m.cols) if c != j]
            entries = [m[r, c] - col[r] * row[c].scale(1 / u) for r in keep_rows for c in keep_cols]
            res.maps[k] = PolyMatrix(m.ring, len(keep_rows), len(keep_cols), entries)
            if k + 1 < len(res.maps):
                nxt = res.maps[k + 1]
                res.maps[k + 1] = nxt.submatrix([r for r in range(nxt.rows) if r != j], list(range(nxt.cols)))
            if k > 0:
                prev = res.maps[k - 1]
                res.maps[k - 1] = prev.submatrix(list(range(prev.rows)), [c for c in range(prev.cols) if c != i])
            del res.twists[k + 1][j]
            del res.twists[k][i]
            changed = True
            log.debug("pruned unit at step %d (%d, %d)", k + 1, i, j)
            break
    while res.maps and res.maps[-1].cols == 0:
        res.maps.pop()
        res.twists.pop()


def betti_numbers(ideal: Union[Ideal, Sequence[Polynomial]], max_steps: int = 8) -> List[int]:
    return free_resolution(ideal, max_steps).betti


def gorenstein_betti(d: int) -> List[int]:
    """Total Betti numbers of a codimension d-2 Gorenstein scheme of degree d.

    β_i = i(d-2-i)/(d-1)·C(d, i+1) for 1 <= i <= d-3, framed by 1 at both ends.
    """
    if d < 4:
        raise DegreeError("the Gorenstein Betti formula needs degree at least 4")
    inner = []
    for i in range(1, d - 2):
        numerator = i * (d - 2 - i) * comb(d, i + 1)
        inner.append(numerator // (d - 1))
    return [1] + inner + [1]
