"""Shared pieces of catalog entries: checks, certificates and the entry base class."""

from __future__ import annotations

import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from coverforge.core.errors import RegressionMismatch
from coverforge.core.polyring import PolyMatrix, Polynomial, Rational, Ring, format_rational

log = logging.getLogger(__name__)


@dataclass
class Check:
    id: str
    passed: bool
    witness: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {"id": self.id, "status": self.status, "witness": self.witness}


@dataclass
class Certificate:
    """Outcome of one catalog entry: recomputed artifacts plus named checks."""

    name: str
    artifacts: Dict[str, Any] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def check(self, check_id: str, passed: bool, witness: str = "") -> bool:
        self.checks.append(Check(check_id, bool(passed), witness))
        log.debug("%s: %s %s", self.name, check_id, "pass" if passed else "FAIL")
        return bool(passed)

    def record(self, key: str, value: Any) -> None:
        self.artifacts[key] = value

    def note(self, text: str) -> None:
        self.notes.append(text)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def get(self, check_id: str) -> Optional[Check]:
        for c in self.checks:
            if c.id == check_id:
                return c
        return None

    def require(self) -> "Certificate":
        """Raise for the first failed check."""
        for c in self.checks:
            if not c.passed:
                detail = f"check {c.id} failed"
                if c.witness:
                    detail += f": {c.witness}"
                raise RegressionMismatch(self.name, detail)
        return self

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "artifacts": self.artifacts,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class CatalogSettings:
    seed: int = 20240607
    ramification_samples: int = 50
    fiber_samples: int = 10


class CatalogEntry(ABC):
    """A named computation with expected values; ``run`` recomputes and compares."""

    name: str = "base"
    description: str = ""

    @abstractmethod
    def run(self, settings: CatalogSettings) -> Certificate:
        ...

    def certificate(self) -> Certificate:
        return Certificate(self.name)


# ── Comparison helpers ────────────────────────────────────────────────────────

def parse_all(ring: Ring, texts: Sequence[str]) -> List[Polynomial]:
    return [ring.parse(t) for t in texts]


def text_list(polys: Sequence[Polynomial]) -> List[str]:
    return [str(p) for p in polys]


def text_map(values: Mapping[str, Polynomial]) -> Dict[str, str]:
    return {k: str(v) for k, v in values.items()}


def first_difference(actual: Sequence[Polynomial], expected: Sequence[Polynomial]) -> str:
    """Empty when equal entry for entry; otherwise names the first mismatch."""
    if len(actual) != len(expected):
        return f"length {len(actual)} != {len(expected)}"
    for i, (a, e) in enumerate(zip(actual, expected)):
        if a != e:
            return f"entry {i}: got {a}, expected {e}"
    return ""


def proportional(f: Polynomial, g: Polynomial) -> Optional[Rational]:
    """The rational s with f = s*g, or None."""
    if g.is_zero:
        return None
    s = f.coefficient(g.leading_monomial) / g.leading_coefficient
    return s if s and f == g.scale(s) else None


def matrix_difference(actual: PolyMatrix, expected: PolyMatrix) -> str:
    if actual.shape != expected.shape:
        return f"shape {actual.shape} != {expected.shape}"
    for i in range(actual.rows):
        for j in range(actual.cols):
            if actual[i, j] != expected[i, j]:
                return f"entry ({i}, {j}): got {actual[i, j]}, expected {expected[i, j]}"
    return ""


def derive_renaming(actual: PolyMatrix, expected: PolyMatrix) -> Tuple[Dict[str, Polynomial], List[str]]:
    """Read a signed variable renaming off entries that are ±one variable on both sides.

    Returns the map (actual variable -> expected signed variable) and a list of
    conflicts where two entries disagree.
    """
    mapping: Dict[str, Polynomial] = {}
    conflicts: List[str] = []
    for a, e in zip(actual.entries, expected.entries):
        if len(a.terms()) != 1 or len(e.terms()) != 1 or a.degree() != 1 or e.degree() != 1:
            continue
        name = a.variables()[0]
        image = e.scale(1 / a.leading_coefficient)
        if name in mapping and mapping[name] != image:
            conflicts.append(f"{name} -> {mapping[name]} and {image}")
        mapping.setdefault(name, image)
    return mapping, conflicts


def random_rational(rng: random.Random, bound: int = 5, max_denominator: int = 3) -> Rational:
    return QQ(rng.randint(-bound, bound), rng.randint(1, max_denominator))


def point_text(values: Sequence[Rational]) -> str:
    return "(" + ", ".join(format_rational(v) for v in values) + ")"
