"""AnalysisReport serialization and the command-line interface."""

import json
from fractions import Fraction

import numpy as np
import pytest

from rbakit.cli import main
from rbakit.fixtures import fixture_text, load_fixture
from rbakit.report import AnalysisReport, analyze, decode_value, encode_value

from conftest import TOL


@pytest.fixture(scope="module")
def s3_report(s3_rba):
    return analyze(s3_rba, TOL)


def test_encode_decode_round_trip():
    values = [Fraction(52, 45), 1.5, -3, "text", complex(1, -2), [Fraction(1, 2), 0.25]]
    encoded = encode_value(values)
    assert encoded[0] == "52/45"
    assert decode_value(encoded)[0] == Fraction(52, 45)
    assert decode_value(encoded)[4] == complex(1, -2)


def test_analyze_s3(s3_report):
    d = s3_report.data
    assert d["overall_pass"]
    assert s3_report.exit_code == 0
    assert d["rba"]["rank"] == 6
    assert d["rba"]["order"] == "6"
    assert d["rba"]["star_fixed"] == 4
    assert d["validation"]["passed"]
    assert d["indicators"]["nu"] == [1, 1, 1]
    assert d["classification"]["one_pair"]["passed"]
    assert d["quaternion"]["verdict"] == "split"
    assert d["integrality"]["integral"]


def test_analyze_rank7(rank7_rba):
    rep = analyze(rank7_rba, TOL)
    d = rep.data
    assert not d["overall_pass"]          # non-integral tensor
    assert rep.exit_code == 1
    assert d["indicators"]["nu"] == [1, 1, 1, -1]
    assert d["classification"]["rank7_class"] == 1
    assert d["classification"]["rank7_consistent"]
    assert not d["integrality"]["integral"]
    assert d["integrality"]["two_adic"]["verdict"] == "obstructed-non-integral"
    assert "quaternionic" in d["quaternion"]["status"]
    ct = d["character_table"]
    assert ct["multiplicities"] == ["1", "52/45", "4/9", "26/5"]


def test_analyze_invalid_rba():
    text = "rank 2\nstar 0 1\nlambda 0 0 0 1\nlambda 0 1 1 1\nlambda 1 0 1 1\nlambda 1 1 0 -1\n"
    rep = analyze(text, TOL)
    assert not rep.data["validation"]["passed"]
    assert rep.exit_code == 1


def test_json_round_trip_and_determinism(s3_rba, s3_report):
    text = s3_report.to_json()
    again = AnalysisReport.from_json(text)
    assert again.to_json() == text
    # identical runs give byte-identical reports
    rerun = analyze(s3_rba, TOL)
    assert rerun.to_json() == text
    # sorted keys
    parsed = json.loads(text)
    assert list(parsed) == sorted(parsed)


def test_render_text(s3_report):
    out = s3_report.render_text()
    assert "overall: PASS" in out
    assert "split" in out


def test_analyze_c3_complex_values(c3_rba):
    # complex character values serialize as {re, im} and round-trip
    rep = analyze(c3_rba, TOL)
    assert rep.data["overall_pass"]
    text = rep.to_json()
    assert AnalysisReport.from_json(text).to_json() == text
    rows = rep.data["character_table"]["characters"]
    complex_entries = [
        v for row in rows for v in row["values"] if isinstance(v, dict)
    ]
    assert complex_entries
    decoded = decode_value(json.loads(text))
    vals = decoded["character_table"]["characters"][1]["values"]
    assert any(isinstance(v, complex) for v in vals)


def test_analyze_standardizes(s3_rba):
    # a rescaled (non-standard) input is standardized before decomposition
    from fractions import Fraction as F
    import itertools
    scale = [F(1), F(3), F(3), F(1), F(1), F(1)]
    lam = s3_rba.lam.copy()
    for i, j, k in itertools.product(range(6), repeat=3):
        lam[i, j, k] = s3_rba.lam[i, j, k] * scale[i] * scale[j] / scale[k]
    from rbakit.core import RBA
    rep = analyze(RBA(lam, s3_rba.star), TOL)
    assert not rep.data["rba"]["standard_basis"]
    assert rep.data["quaternion"]["verdict"] == "split"


# ---------------------------------------------------------------------------
# fixtures bundle
# ---------------------------------------------------------------------------

def test_bundled_fixtures(s3_rba, rank7_rba):
    assert np.array_equal(load_fixture("s3").lam, s3_rba.lam)
    assert np.array_equal(load_fixture("s3.rba").lam, s3_rba.lam)
    bundled = load_fixture("rank7_h")
    assert np.array_equal(bundled.lam, rank7_rba.lam)
    assert load_fixture("d8").rank == 8
    assert load_fixture("c2").rank == 2


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def _write_s3(tmp_path):
    path = tmp_path / "s3.rba"
    path.write_text(fixture_text("s3.rba"))
    return str(path)


def test_cli_validate(tmp_path, capsys):
    path = _write_s3(tmp_path)
    assert main(["validate", path]) == 0
    out = capsys.readouterr().out
    assert "[pass]" in out


def test_cli_validate_json(tmp_path, capsys):
    path = _write_s3(tmp_path)
    assert main(["validate", path, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"]


def test_cli_analyze_json(tmp_path, capsys):
    path = _write_s3(tmp_path)
    assert main(["analyze", path, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["overall_pass"]
    assert payload["quaternion"]["verdict"] == "split"
    assert payload["indicators"]["s_actual"] == 4


def test_cli_quaternion(tmp_path, capsys):
    path = _write_s3(tmp_path)
    assert main(["quaternion", path, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["a"] == "-12"
    assert payload["beta"] == "4"
    assert payload["verdict"] == "split"


def test_cli_hilbert(capsys):
    assert main(["hilbert", "-1", "-1", "--json"]) == 1  # division verdict
    payload = json.loads(capsys.readouterr().out)
    assert payload["places"] == {"2": -1, "inf": -1}
    assert payload["product"] == 1
    assert payload["verdict"] == "division"
    assert main(["hilbert", "-3", "4"]) == 0
    capsys.readouterr()
    assert main(["hilbert", "0", "4"]) == 2  # zero argument
    assert main(["hilbert", "2", "3/0"]) == 2


def test_cli_example_pipe(capsys):
    assert main(["example", "rank7"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("#")
    from rbakit.core import RBA
    rba = RBA.from_text(text)
    assert rba.rank == 7
    assert main(["example", "nope"]) == 2
    capsys.readouterr()


def test_cli_check_integrality(tmp_path, capsys):
    path = _write_s3(tmp_path)
    assert main(["check-integrality", path]) == 0
    capsys.readouterr()
    r7 = tmp_path / "r7.rba"
    r7.write_text(fixture_text("rank7_h"))
    assert main(["check-integrality", str(r7), "--json"]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert not payload["integral"]
    assert payload["two_adic"]["verdict"] == "obstructed-non-integral"


def test_cli_from_group_and_scheme(tmp_path, capsys):
    cayley = tmp_path / "s3.cayley"
    cayley.write_text(fixture_text("s3"))
    assert main(["from-group", str(cayley)]) == 0
    rba_text = capsys.readouterr().out
    from rbakit.core import RBA
    assert RBA.from_text(rba_text).rank == 6

    # export the regular scheme of the same group and re-ingest
    from rbakit.ingest import parse_cayley, thin_scheme
    mats = thin_scheme(parse_cayley(fixture_text("s3")))
    scheme_file = tmp_path / "s3.scheme"
    lines = ["points 6 classes 6"]
    for m in mats:
        for row in m:
            lines.append(" ".join(str(x) for x in row))
    scheme_file.write_text("\n".join(lines) + "\n")
    assert main(["from-scheme", str(scheme_file)]) == 0
    scheme_text = capsys.readouterr().out
    assert scheme_text == rba_text  # identical tensors, identical emission


def test_cli_batch_directory(tmp_path, capsys):
    (tmp_path / "a.rba").write_text(fixture_text("s3.rba"))
    (tmp_path / "b.rba").write_text(fixture_text("rank7_h"))
    code = main(["analyze", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 1  # worst of the batch (rank7 is non-integral)
    assert out.count("rbakit analysis") == 2


def test_cli_out_flag(tmp_path, capsys):
    path = _write_s3(tmp_path)
    target = tmp_path / "report.json"
    assert main(["analyze", path, "--json", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    payload = json.loads(target.read_text())
    assert payload["overall_pass"]


def test_cli_tol_flag(tmp_path, capsys):
    path = _write_s3(tmp_path)
    assert main(["analyze", path, "--json", "--tol", "1e-6"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["meta"]["eps_residual"] == 1e-6


def test_cli_seed_and_env(tmp_path, capsys, monkeypatch):
    path = _write_s3(tmp_path)
    assert main(["analyze", path, "--json", "--seed", "7"]) == 0
    first = capsys.readouterr().out
    assert json.loads(first)["meta"]["seed"] == 7
    monkeypatch.setenv("RBA_SEED", "9")
    assert main(["analyze", path, "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["meta"]["seed"] == 9


def test_cli_exact_float_flags(tmp_path, capsys):
    path = _write_s3(tmp_path)
    assert main(["analyze", path, "--exact", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["meta"]["mode"] == "exact"
    assert main(["analyze", path, "--float", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["meta"]["mode"] == "float"
    r7 = tmp_path / "r7.rba"
    r7.write_text(fixture_text("rank7_h"))
    assert main(["analyze", str(r7), "--exact"]) == 2  # decimals cannot be exact
    capsys.readouterr()


def test_cli_stdin(tmp_path, capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(fixture_text("s3.rba")))
    assert main(["analyze", "-", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["overall_pass"]


def test_cli_structural_error(tmp_path, capsys):
    bad = tmp_path / "bad.rba"
    bad.write_text("rank 2\nstar 0\n")
    assert main(["validate", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["validate", str(tmp_path / "missing.rba")]) == 2
