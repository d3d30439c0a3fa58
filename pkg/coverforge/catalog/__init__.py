"""Catalog of worked computations, each recomputed and checked against its expected values."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Optional, Type

from coverforge.catalog import degree6, triple_cover
from coverforge.catalog.base import CatalogEntry, CatalogSettings, Certificate
from coverforge.catalog.degree6 import Degree6Entry
from coverforge.catalog.galois import GaloisEntry
from coverforge.catalog.quadruple import QuadrupleEntry
from coverforge.catalog.spinor import SpinorEntry
from coverforge.catalog.three_points import ThreePointsEntry
from coverforge.catalog.triple_cover import TripleCoverEntry
from coverforge.core.cover import CoverRelations
from coverforge.core.errors import PreconditionError
from coverforge.core.polyring import Substitution

log = logging.getLogger(__name__)

ENTRIES: Dict[str, Type[CatalogEntry]] = {
    cls.name: cls
    for cls in (
        TripleCoverEntry,
        Degree6Entry,
        SpinorEntry,
        ThreePointsEntry,
        GaloisEntry,
        QuadrupleEntry,
    )
}


def entry_names() -> List[str]:
    return sorted(ENTRIES)


def get_entry(name: str) -> CatalogEntry:
    try:
        return ENTRIES[name]()
    except KeyError:
        raise PreconditionError(f"unknown catalog entry {name!r}; known: {', '.join(entry_names())}") from None


def run_entry(name: str, settings: Optional[CatalogSettings] = None) -> Certificate:
    entry = get_entry(name)
    log.info("catalog: running %s", name)
    return entry.run(settings or CatalogSettings())


def run_all(
    settings: Optional[CatalogSettings] = None,
    threads: int = 1,
    names: Optional[Iterable[str]] = None,
) -> List[Certificate]:
    """Run entries (all by default) and return certificates ordered by entry name."""
    settings = settings or CatalogSettings()
    selected = sorted(names) if names is not None else entry_names()
    for name in selected:
        get_entry(name)
    if threads <= 1:
        return [run_entry(name, settings) for name in selected]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {name: pool.submit(run_entry, name, settings) for name in selected}
        return [futures[name].result() for name in selected]


def tabulated_renaming(rel: CoverRelations) -> Substitution:
    """Substitution from the solver's free unknowns to the tabulated parameters of a known family."""
    for module in (triple_cover, degree6):
        if set(rel.free_c) == set(module.RENAMING):
            return module.renaming(rel)
    raise PreconditionError(
        f"{rel.problem.name}: free unknowns {', '.join(rel.free_c)} match no tabulated family"
        " (triple cover or degree 6 with trace-free conditions)"
    )


__all__ = [
    "CatalogEntry",
    "CatalogSettings",
    "Certificate",
    "ENTRIES",
    "entry_names",
    "get_entry",
    "run_all",
    "run_entry",
    "tabulated_renaming",
]
