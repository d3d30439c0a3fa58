from __future__ import annotations

import json

import pandas as pd

from coverforge.catalog.base import Certificate
from coverforge.catalog.triple_cover import triple_cover_relations
from coverforge.core.groebner import Ideal
from coverforge.core.output import (
    BettiModel,
    CoverRelationsModel,
    PolynomialListModel,
    betti_model,
    certificate_model,
    cover_relations_model,
    dump_json,
    format_betti,
    format_relations,
    polynomial_list_model,
    render_report,
    save_report,
    summary_frame,
)
from coverforge.core.resolution import free_resolution


def _certificate() -> Certificate:
    cert = Certificate("sample")
    cert.record("betti", [1, 3, 2])
    cert.record("d", {"d0": "2*c0"})
    cert.check("first", True, "3 samples")
    cert.check("second", False, "e = (1, 0)")
    cert.note("slow parts skipped")
    return cert


def test_dump_json_is_sorted_with_trailing_newline(xy):
    text = dump_json(polynomial_list_model(xy, [xy.parse("x^2 - y")]))
    assert text.endswith("}\n")
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert data["polynomials"] == ["x^2 - y"]


def test_polynomial_list_model_restores_polynomials(xy):
    polys = [xy.parse("1/2*x*y - 3"), xy.parse("y^2")]
    model = PolynomialListModel.model_validate_json(dump_json(polynomial_list_model(xy, polys, truncated=True)))
    assert model.truncated
    assert model.to_polynomials() == polys


def test_betti_model_ranks(xyz):
    res = free_resolution(Ideal(xyz, list(xyz.gens())))
    model = BettiModel.model_validate_json(dump_json(betti_model(res)))
    assert model.ranks() == [1, 3, 3, 1]
    assert model.betti[2].twists == [2, 2, 2]
    assert format_betti(res).splitlines()[-1].split()[0] == "total"


def test_certificate_model_and_report():
    model = certificate_model(_certificate())
    assert not model.ok
    text = render_report([model])
    assert "sample: FAILED" in text
    assert "[pass] first: 3 samples" in text
    assert "[fail] second: e = (1, 0)" in text
    assert "d0 = 2*c0" in text
    assert "note: slow parts skipped" in text


def test_summary_frame_and_saved_files(tmp_path):
    model = certificate_model(_certificate())
    frame = summary_frame([model])
    assert list(frame.columns) == ["entry", "check", "status", "witness"]
    assert frame["status"].tolist() == ["pass", "fail"]
    paths = save_report([model], tmp_path / "out")
    assert [p.name for p in paths] == ["report.txt", "summary.csv"]
    assert pd.read_csv(paths[1])["check"].tolist() == ["first", "second"]


def test_relations_model_and_text():
    rel = triple_cover_relations()
    model = CoverRelationsModel.model_validate_json(dump_json(cover_relations_model(rel)))
    assert model.free_c == list(rel.free_c)
    assert model.cubics_ok
    assert set(model.c_ring().names) == set(rel.layout.c_names)
    text = format_relations(rel)
    assert "free: " + " ".join(rel.free_c) in text
    assert text.endswith("cubic residues zero: true")
