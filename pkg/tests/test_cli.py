import csv
import io
import json

import numpy as np
import pytest

from latticebounds import cli
from latticebounds.figures import to_csv


def structured(argv):
    code, out = cli.run(argv + ["--format", "structured"])
    return code, json.loads(out)


# --- bounds ---------------------------------------------------------------------------


def test_bounds_hermite_24_exact_first():
    code, doc = structured(["bounds", "hermite", "--n", "24"])
    assert code == 0
    first = doc["bounds"][0]
    assert (first["kind"], first["value"]) == ("exact", 4.0)
    assert doc["best"]["value"] == 4.0


def test_bounds_hermite_text():
    code, out = cli.run(["bounds", "hermite", "--n", "24"])
    lines = out.splitlines()
    assert code == 0 and lines[0].split()[:3] == ["table", "exact", "4"]
    assert lines[-1].startswith("best: table (exact) 4")


def test_bounds_schnorr_k1():
    code, doc = structured(["bounds", "schnorr", "--k", "1"])
    assert code == 0
    assert doc["best"]["kind"] == "exact"
    assert doc["best"]["value"] == pytest.approx(4 / 3)


def test_bounds_rankin_old_lower_12():
    code, doc = structured(["bounds", "rankin", "--k", "12", "--method", "old_lower"])
    assert code == 0
    assert [b["method"] for b in doc["bounds"]] == ["old_lower"]
    assert doc["bounds"][0]["value"] == pytest.approx(1.0)
    assert doc["bounds"][0]["log_value"] == pytest.approx(0.0, abs=1e-15)


def test_bounds_rankin_has_log_values():
    code, doc = structured(["bounds", "rankin", "--k", "1000"])
    assert code == 0
    for b in doc["bounds"]:
        assert b["log_value"] is not None


@pytest.mark.parametrize("argv", [
    ["bounds", "kz", "--n", "50", "--method", "new"],
    ["bounds", "hermite", "--n", "5", "--method", "bogus"],
    ["bounds", "schnorr", "--k", "0"],
    ["bounds", "volume", "--n", "3"],
    ["bounds", "hermite"],
])
def test_bounds_usage_errors(argv):
    assert cli.run(argv)[0] == 2


def test_bounds_csv():
    code, out = cli.run(["bounds", "kz", "--n", "200", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and "method" in rows[0]
    assert {"hs08", "wc18", "new", "product"} <= {r[rows[0].index("method")] for r in rows[1:]}


def test_bounds_structured_round_trip():
    code, doc = structured(["bounds", "kz", "--n", "109"])
    new = next(b for b in doc["bounds"] if b["method"] == "new")
    from latticebounds.kzconst import kz_upper

    assert new["value"] == kz_upper(109, "new").value


# --- verify ----------------------------------------------------------------------------


def test_verify_low_bits_rejected():
    assert cli.run(["verify", "--bits", "32"])[0] == 2


def test_verify_filter_zeta(tmp_path):
    report = tmp_path / "r.json"
    code, out = cli.run(["verify", "--filter", "zeta", "--report", str(report)])
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln.startswith("rankin.")]
    assert [ln.split()[0] for ln in lines] == [
        "rankin.zeta_ratio_grid", "rankin.zeta2_below_2", "rankin.zeta3_below_pi2_over_8"]
    doc = json.loads(report.read_text())
    assert len(doc["claims"]) == 3
    for c in doc["claims"]:
        assert {"claim_id", "statement", "computed_margin", "status", "precision_bits"} <= set(c)


def test_verify_failing_claim_exits_1():
    code, doc = structured(["verify", "--filter", "leading_constant", "--report", ""])
    assert code == 1
    assert [c["status"] for c in doc["claims"]] == ["fail"]


def test_verify_no_match_is_usage_error():
    assert cli.run(["verify", "--filter", "no-such-claim", "--report", ""])[0] == 2


def test_verify_deterministic():
    a = cli.run(["verify", "--filter", "rankin.stirling", "--report", "", "--format", "structured"])
    b = cli.run(["verify", "--filter", "rankin.stirling", "--report", "", "--format", "structured"])
    assert a == b


# --- figures -----------------------------------------------------------------------------


def test_figures_fig1_to_file(tmp_path, capsys):
    path = tmp_path / "fig1.csv"
    code, out = cli.run(["figures", "--id", "fig1", "--out", str(path)])
    assert code == 0
    assert "892 rows" in out
    assert path.read_text() == to_csv("fig1")


def test_figures_fig4_stdout(capsys):
    code, out = cli.run(["figures", "--id", "fig4", "--out", "-"])
    assert code == 0
    assert out == to_csv("fig4")
    assert len(out.splitlines()) == 11
    assert "10 rows" in capsys.readouterr().err


def test_figures_unknown_id():
    assert cli.run(["figures", "--id", "fig9"])[0] == 2


def test_figures_write_failure(tmp_path):
    assert cli.run(["figures", "--id", "fig4", "--out", str(tmp_path / "missing" / "x.csv")])[0] == 1


# --- reduce -------------------------------------------------------------------------------


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_reduce_identity_rank3(tmp_path):
    path = write(tmp_path, "id.txt", "3 3\n1 0 0\n0 1 0\n0 0 1\n")
    code, doc = structured(["reduce", path, "--method", "kz"])
    assert code == 0
    assert doc["lambda"] == 1.0
    assert np.array_equal(np.array(doc["reduced_basis"]), np.eye(3))
    assert doc["transform"] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_reduce_rank2_ratio(tmp_path):
    path = write(tmp_path, "b.txt", "2 2\n3 1\n1 2\n")
    code, doc = structured(["reduce", path, "--method", "kz"])
    assert code == 0
    assert doc["lambda2_over_rnn2"] <= 4 / 3
    assert doc["bound"]["value"] == pytest.approx(4 / 3)
    assert doc["bound_holds"] is True


def test_reduce_writes_outputs(tmp_path):
    path = write(tmp_path, "b.txt", '{"entries": [[1, 100], [0, 1]]}')
    out, tr = tmp_path / "red.txt", tmp_path / "z.txt"
    code, _ = cli.run(["reduce", path, "--method", "lll", "--out", str(out), "--transform-out", str(tr)])
    assert code == 0
    from latticebounds.reduction import read_basis

    red, z = read_basis(out), read_basis(tr)
    assert np.allclose(np.array([[1, 100], [0, 1]]) @ z, red)


def test_reduce_cap_exceeded(tmp_path):
    rows = "\n".join(" ".join("1" if i == j else "0" for j in range(13)) for i in range(13))
    path = write(tmp_path, "big.txt", f"13 13\n{rows}\n")
    assert cli.run(["reduce", path, "--method", "kz"])[0] == 1


@pytest.mark.parametrize("text", ["2 2\n1 2\n", "2 2\n1 2\n2 4\n", "1 2\n1 2\n"])
def test_reduce_input_errors(tmp_path, text):
    assert cli.run(["reduce", write(tmp_path, "bad.txt", text)])[0] == 2


def test_reduce_missing_file(tmp_path):
    assert cli.run(["reduce", str(tmp_path / "nope.txt")])[0] == 2


# --- empirical ------------------------------------------------------------------------------


def test_empirical_rank4():
    code, doc = structured(["empirical", "--rank", "4", "--trials", "50", "--seed", "7"])
    assert code == 0
    assert doc["beta_ratio_max"] <= 1.59
    assert doc["ok"] is True


def test_empirical_deterministic():
    argv = ["empirical", "--rank", "4", "--trials", "50", "--seed", "7"]
    assert cli.run(argv) == cli.run(argv)
    assert cli.run(argv) == cli.run(argv + ["--jobs", "2"])


def test_empirical_rank1():
    code, doc = structured(["empirical", "--rank", "1", "--trials", "5", "--seed", "1"])
    assert code == 0
    assert doc["kz_ratio_max"] == doc["kz_ratio_mean"] == 1.0


@pytest.mark.parametrize("argv", [["--rank", "11"], ["--rank", "3", "--trials", "0"], ["--rank", "0"]])
def test_empirical_usage_errors(argv):
    assert cli.run(["empirical", "--trials", "2", "--seed", "0"] + argv)[0] == 2


def test_no_command_is_usage_error():
    assert cli.run([])[0] == 2
