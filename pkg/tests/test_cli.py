from __future__ import annotations

import pytest

from coverforge.__main__ import main
from coverforge.catalog.triple_cover import EXPECTED_C, EXPECTED_D, EXPECTED_N, RENAMING
from coverforge.core.output import (
    BettiModel,
    CoverRelationsModel,
    PolynomialListModel,
    SyzygyModel,
    TabulatedRelationsModel,
)


@pytest.fixture
def triple_file(problems_dir):
    return str(problems_dir / "triple.cover")


@pytest.fixture
def twisted_file(problems_dir):
    return str(problems_dir / "twisted.ideal")


def test_no_verb_prints_help(capsys):
    assert main([]) == 0
    assert "usage" in capsys.readouterr().out


def test_unknown_verb_is_an_argparse_error():
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_gb_json(capsys, twisted_file):
    assert main(["gb", twisted_file, "--json"]) == 0
    model = PolynomialListModel.model_validate_json(capsys.readouterr().out)
    assert model.order == "lex"
    assert [str(p) for p in model.to_polynomials()] == [
        "t - x", "x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2",
    ]


def test_nf_reduces_members_to_zero(capsys, twisted_file):
    assert main(["nf", twisted_file, "--poly", "t^3 - z"]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_order_flag_overrides_the_file(capsys, twisted_file):
    assert main(["gb", twisted_file, "--order", "degrevlex", "--json"]) == 0
    assert PolynomialListModel.model_validate_json(capsys.readouterr().out).order == "degrevlex"


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.cover"
    bad.write_text("ring x y\nq0 = x^\n", encoding="utf-8")
    assert main(["gb", str(bad)]) == 1
    assert "line 2, column 7" in capsys.readouterr().err


def test_missing_file_is_a_parse_error(tmp_path):
    assert main(["gb", str(tmp_path / "absent.cover")]) == 1


def test_syz_and_resolve(capsys, triple_file):
    assert main(["syz", triple_file, "--json"]) == 0
    assert len(SyzygyModel.model_validate_json(capsys.readouterr().out).syzygies) == 2
    assert main(["resolve", triple_file, "--json"]) == 0
    assert BettiModel.model_validate_json(capsys.readouterr().out).ranks() == [1, 3, 2]


def test_eliminate(capsys, twisted_file):
    assert main(["eliminate", twisted_file, "--vars", "t", "--json"]) == 0
    model = PolynomialListModel.model_validate_json(capsys.readouterr().out)
    assert model.ring == ["x", "y", "z"]
    assert "x^2 - y" in model.polynomials


def test_eliminate_needs_variables(twisted_file):
    assert main(["eliminate", twisted_file, "--vars", ""]) == 2


def test_relations_json_is_deterministic(capsys, triple_file):
    assert main(["relations", triple_file, "--json"]) == 0
    first = capsys.readouterr().out
    assert main(["relations", triple_file, "--json"]) == 0
    assert capsys.readouterr().out == first
    model = CoverRelationsModel.model_validate_json(first)
    assert set(model.free_c) == set(RENAMING)
    assert model.cubics_ok
    assert len(model.d) == 3


def test_relations_text(capsys, triple_file):
    assert main(["relations", triple_file]) == 0
    assert "cubic residues zero: true" in capsys.readouterr().out


def test_relations_in_tabulated_names(capsys, triple_file):
    assert main(["relations", triple_file, "--json", "--tabulated-names"]) == 0
    model = TabulatedRelationsModel.model_validate_json(capsys.readouterr().out)
    params = model.parameter_ring()
    assert model.parameters == ["c0", "c1", "c2", "c3"]
    assert [[params.parse(e) for e in row] for row in model.C] == [[params.parse(e) for e in row] for row in EXPECTED_C]
    assert [[params.parse(e) for e in row] for row in model.N] == [[params.parse(e) for e in row] for row in EXPECTED_N]
    assert [params.parse(d) for d in model.D] == [params.parse(d) for d in EXPECTED_D]
    assert model.Iq == []
    assert model.cubics_ok


def test_relations_text_in_tabulated_names(capsys, triple_file):
    assert main(["relations", triple_file, "--tabulated-names"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "# triple in c0, c1, c2, c3"
    assert "D0 = " in out


def test_tabulated_names_need_a_known_family(capsys, tmp_path):
    plain = tmp_path / "plain.cover"
    plain.write_text("ring z1 z2\nq0 = z1^2\nq1 = z1*z2\nq2 = z2^2\n", encoding="utf-8")
    assert main(["relations", str(plain), "--tabulated-names"]) == 2
    assert "match no tabulated family" in capsys.readouterr().err


def test_fiber_at_a_point(capsys, triple_file):
    assert main(["fiber", triple_file, "--point", "c01=1,c11=2,c20=-1,c21=3"]) == 0
    out = capsys.readouterr().out
    assert "points: 3" in out
    assert "ok: true" in out


@pytest.mark.parametrize(
    "extra",
    [
        ["--e", "1,0,0,1", "--c", "2,0,0,3"],
        ["--point", "c01=1,c11=2,c20=-1,c21=3", "--e", "1,0,0,1"],
        ["--e", "1,0,0,1"],
    ],
)
def test_fiber_argument_errors(triple_file, extra):
    assert main(["fiber", triple_file, *extra]) == 2


def test_catalog_list(capsys):
    assert main(["catalog", "--list"]) == 0
    assert capsys.readouterr().out.split() == [
        "deg6-ogr", "degree6", "galois", "quadruple", "three-points", "triple-cover",
    ]


def test_catalog_report_files(capsys, tmp_path):
    out_dir = tmp_path / "report"
    assert main(["catalog", "triple-cover", "--report", str(out_dir)]) == 0
    assert "triple-cover: ok" in capsys.readouterr().out
    assert (out_dir / "report.txt").exists()
    assert (out_dir / "summary.csv").exists()


def test_catalog_rejects_bad_thread_count(monkeypatch):
    monkeypatch.setenv("COVER_FORGE_THREADS", "abc")
    assert main(["catalog", "triple-cover"]) == 2


def test_verify_unknown_entry():
    assert main(["verify", "no-such-entry"]) == 2
