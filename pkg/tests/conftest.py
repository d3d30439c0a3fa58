"""Shared fixtures: small rings, the bundled problem files, seeded polynomial factories."""

from __future__ import annotations

import random
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Callable, List

import pytest

from coverforge.catalog.base import CatalogSettings
from coverforge.core.polyring import Polynomial, Ring

PROJECT_ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture
def xy() -> Ring:
    return Ring(("x", "y"), "degrevlex")


@pytest.fixture
def xyz() -> Ring:
    return Ring(("x", "y", "z"), "degrevlex")


@pytest.fixture
def problems_dir() -> Path:
    return PROJECT_ROOT / "problems"


@pytest.fixture
def quick_settings() -> CatalogSettings:
    return CatalogSettings(seed=7, ramification_samples=10, fiber_samples=2)


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv("COVER_FORGE_THREADS", raising=False)
    monkeypatch.delenv("COVER_FORGE_LOG_LEVEL", raising=False)


def _monomials(arity: int, degree: int) -> List[tuple]:
    out = []
    for combo in combinations_with_replacement(range(arity), degree):
        exps = [0] * arity
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return out


@pytest.fixture
def random_poly() -> Callable[..., Polynomial]:
    """``random_poly(rng, ring, degree, terms=3, homogeneous=True)``; never zero."""

    def make(rng: random.Random, ring: Ring, degree: int, terms: int = 3, homogeneous: bool = True) -> Polynomial:
        if homogeneous:
            pool = _monomials(ring.arity, degree)
        else:
            pool = [m for d in range(degree + 1) for m in _monomials(ring.arity, d)]
        while True:
            picked = rng.sample(pool, min(terms, len(pool)))
            f = ring.from_terms((m, rng.choice((-3, -2, -1, 1, 2, 3))) for m in picked)
            if f and f.degree() == degree:
                return f

    return make
