"""Output generation: JSON models, Betti tables, text and report rendering."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence

import pandas as pd
from jinja2 import Template
from pydantic import BaseModel, Field

from coverforge.core.polyring import Polynomial, PolyMatrix, Ring, format_rational

# ── JSON models ───────────────────────────────────────────────────────────────


class PolynomialListModel(BaseModel):
    ring: List[str]
    order: str
    polynomials: List[str]
    truncated: bool = False

    def to_polynomials(self) -> List[Polynomial]:
        ring = Ring(self.ring, self.order)
        return [ring.parse(p) for p in self.polynomials]


class SyzygyModel(BaseModel):
    ring: List[str]
    order: str
    generators: List[str]
    syzygies: List[List[str]]


class BettiEntry(BaseModel):
    step: int
    rank: int
    twists: List[int]


class BettiModel(BaseModel):
    ring: List[str]
    order: str
    betti: List[BettiEntry]
    truncated: bool = False

    def ranks(self) -> List[int]:
        return [entry.rank for entry in self.betti]


class CoverRelationsModel(BaseModel):
    name: str
    fiber_vars: List[str]
    c_vars: List[str]
    free_c: List[str]
    n_subst: Dict[str, str]
    c_subst: Dict[str, str]
    linear: List[str]
    d: Dict[str, str]
    Iq: List[str]
    cubics_ok: bool

    def c_ring(self) -> Ring:
        return Ring(self.c_vars, "degrevlex")


class TabulatedRelationsModel(BaseModel):
    """C, N (transposed), D and I_q in the tabulated parameters; D in the displayed sign."""

    name: str
    parameters: List[str]
    C: List[List[str]]
    N: List[List[str]]
    D: List[str]
    Iq: List[str]
    cubics_ok: bool

    def parameter_ring(self) -> Ring:
        return Ring(self.parameters, "degrevlex")


class CheckModel(BaseModel):
    id: str
    status: Literal["pass", "fail"]
    witness: str = ""


class CertificateModel(BaseModel):
    name: str
    artifacts: Dict[str, Any] = Field(default_factory=dict)
    checks: List[CheckModel]
    notes: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)


class FiberReportModel(BaseModel):
    c_point: Dict[str, str]
    d: List[str]
    points: Optional[int]
    reference_points: Optional[int]
    betti: List[int]
    reference_betti: List[int]
    initial_matches: bool
    ok: bool


def dump_json(model: BaseModel) -> str:
    """Sorted keys, two-space indent, trailing newline."""
    return json.dumps(model.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"


# ── Conversions ───────────────────────────────────────────────────────────────

def polynomial_list_model(ring: Ring, polys: Sequence[Polynomial], truncated: bool = False) -> PolynomialListModel:
    return PolynomialListModel(ring=list(ring.names), order=str(ring.order),
                               polynomials=[str(p) for p in polys], truncated=truncated)


def syzygy_model(ring: Ring, gens: Sequence[Polynomial], syzygies: Sequence) -> SyzygyModel:
    return SyzygyModel(ring=list(ring.names), order=str(ring.order), generators=[str(g) for g in gens],
                       syzygies=[[str(e) for e in s] for s in syzygies])


def betti_model(resolution) -> BettiModel:
    entries = [BettiEntry(step=i, rank=len(t), twists=list(t)) for i, t in enumerate(resolution.twists)]
    ring = resolution.ring
    return BettiModel(ring=list(ring.names), order=str(ring.order), betti=entries, truncated=resolution.truncated)


def cover_relations_model(rel) -> CoverRelationsModel:
    return CoverRelationsModel(
        name=rel.problem.name,
        fiber_vars=list(rel.layout.fiber_vars),
        c_vars=list(rel.layout.c_names),
        free_c=list(rel.free_c),
        n_subst={k: str(v) for k, v in rel.n_subst.items()},
        c_subst={k: str(v) for k, v in rel.c_subst.items()},
        linear=[str(p) for p in rel.linear_relations],
        d={k: str(v) for k, v in rel.d_exprs.items()},
        Iq=[str(p) for p in rel.quadratic_relations],
        cubics_ok=rel.cubics_ok,
    )


def _matrix_rows(m: PolyMatrix) -> List[List[str]]:
    return [[str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def tabulated_relations_model(rel, to_params) -> TabulatedRelationsModel:
    """``rel`` renamed by ``to_params`` into the tabulated parameters, with D = -d."""
    params = to_params.codomain
    return TabulatedRelationsModel(
        name=rel.problem.name,
        parameters=list(params.names),
        C=_matrix_rows(rel.C_matrix().map(to_params, params)),
        N=_matrix_rows(rel.N_matrix().transpose().map(to_params, params)),
        D=[str(-to_params(d)) for d in rel.D_vector()],
        Iq=[str(to_params(g)) for g in rel.quadratic_relations],
        cubics_ok=rel.cubics_ok,
    )


def certificate_model(cert) -> CertificateModel:
    return CertificateModel.model_validate(cert.to_dict())


def fiber_report_model(report) -> FiberReportModel:
    return FiberReportModel(
        c_point={k: format_rational(v) for k, v in report.c_point.items()},
        d=[format_rational(v) for v in report.d_values],
        points=report.dimension,
        reference_points=report.reference_dimension,
        betti=report.betti,
        reference_betti=report.reference_betti,
        initial_matches=report.initial_matches,
        ok=report.ok,
    )


# ── Text ──────────────────────────────────────────────────────────────────────

def betti_frame(resolution) -> pd.DataFrame:
    """Graded Betti numbers: rows are j - i, columns homological degree i, plus a total row."""
    table = resolution.graded_betti()
    steps = list(range(len(resolution.twists)))
    shifts = sorted({j - i for (i, j) in table}) or [0]
    data = {i: [table.get((i, i + s), 0) for s in shifts] for i in steps}
    frame = pd.DataFrame(data, index=[str(s) for s in shifts])
    frame.loc["total"] = [sum(data[i]) for i in steps]
    return frame


def format_betti(resolution) -> str:
    text = betti_frame(resolution).to_string()
    if resolution.truncated:
        text += "\n(truncated)"
    return text


def format_polynomials(polys: Sequence[Polynomial]) -> str:
    return "\n".join(str(p) for p in polys)


def format_relations(rel) -> str:
    lines = [f"# {rel.problem.name}: {len(rel.free_c)} free parameters"]
    lines.append("free: " + " ".join(rel.free_c))
    lines.append("linear relations:")
    lines.extend(f"  {p}" for p in rel.linear_relations)
    lines.append("N:")
    lines.extend("  " + row for row in str(rel.N_matrix()).splitlines())
    lines.append("D:")
    lines.extend(f"  {name} = {expr}" for name, expr in rel.d_exprs.items())
    lines.append(f"I_q ({len(rel.quadratic_relations)} quadrics):")
    lines.extend(f"  {p}" for p in rel.quadratic_relations)
    lines.append(f"cubic residues zero: {str(rel.cubics_ok).lower()}")
    return "\n".join(lines)


def format_tabulated(model: TabulatedRelationsModel) -> str:
    lines = [f"# {model.name} in {', '.join(model.parameters)}"]
    for title, rows in (("C", model.C), ("N", model.N)):
        lines.append(f"{title}:")
        lines.extend("  [" + ", ".join(row) + "]" for row in rows)
    lines.append("D:")
    lines.extend(f"  D{i} = {expr}" for i, expr in enumerate(model.D))
    lines.append(f"I_q ({len(model.Iq)} quadrics):")
    lines.extend(f"  {p}" for p in model.Iq)
    lines.append(f"cubic residues zero: {str(model.cubics_ok).lower()}")
    return "\n".join(lines)


def format_matrix_block(title: str, m: PolyMatrix) -> str:
    return title + ":\n" + "\n".join("  " + row for row in str(m).splitlines())


# ── Catalog reports ───────────────────────────────────────────────────────────

_REPORT_TEMPLATE = Template("""\
coverforge catalog report
=========================
{% for cert in certificates %}
{{ cert.name }}: {{ "ok" if cert.ok else "FAILED" }}
{{ "-" * (cert.name|length + 4) }}
{% for check in cert.checks %}  [{{ check.status }}] {{ check.id }}{% if check.witness %}: {{ check.witness }}{% endif %}
{% endfor %}{% for key, value in cert.artifacts.items() %}  {{ key }}:
{% if value is string %}    {{ value }}
{% elif value is mapping %}{% for k, v in value.items() %}    {{ k }} = {{ v }}
{% endfor %}{% elif value is iterable %}{% for v in value %}    {{ v }}
{% endfor %}{% else %}    {{ value }}
{% endif %}{% endfor %}{% for note in cert.notes %}  note: {{ note }}
{% endfor %}{% endfor %}""")


def render_report(certificates: Sequence) -> str:
    return _REPORT_TEMPLATE.render(certificates=certificates)


def summary_frame(certificates: Sequence) -> pd.DataFrame:
    rows = []
    for cert in certificates:
        for check in cert.checks:
            rows.append({"entry": cert.name, "check": check.id, "status": check.status, "witness": check.witness})
    return pd.DataFrame(rows, columns=["entry", "check", "status", "witness"])


def save_report(certificates: Sequence, out_dir: Path) -> List[Path]:
    """Write report.txt and summary.csv under ``out_dir``; returns the paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = out_dir / "report.txt"
    report_path.write_text(render_report(certificates), encoding="utf-8")
    csv_path = out_dir / "summary.csv"
    summary_frame(certificates).to_csv(csv_path, index=False, encoding="utf-8")
    return [report_path, csv_path]
