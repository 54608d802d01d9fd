import json
import subprocess
import sys

import pytest

from reptype.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_pres(tmp_path, name, gens, rels, bound=6, p=2):
    f = tmp_path / f"{name}.json"
    f.write_text(json.dumps({"name": name, "field": {"p": p}, "generators": gens,
                             "relations": rels, "degree_bound": bound}, indent=2))
    return str(f)


def test_algebra_check(capsys):
    code, out, _ = run(capsys, "algebra-check", "corpus:qci_7")
    assert code == 0
    rep = json.loads(out)
    assert rep["dimension"] == 4 and rep["field"]["name"] == "F_7"
    assert '"loewy_length": 3' in out


def test_resolve_csv_klein_four(capsys):
    code, out, _ = run(capsys, "resolve", "corpus:kleinfour", "--format", "csv", "--cutoff", "10")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,b_n,len_Pn,dim_syzygy"
    rows = [line.split(",") for line in lines[1:12]]
    assert [int(r[1]) for r in rows] == [n + 1 for n in range(11)]
    assert lines[-1].startswith("# complexity:")


def test_resolve_csv_dual_numbers_periodic(capsys):
    code, out, _ = run(capsys, "resolve", "corpus:poly_trunc_2", "--format", "csv")
    assert code == 0
    assert out.strip().splitlines()[-1] == "# complexity: periodic d=1, c_hat=1"


def test_regular_module_is_projective(capsys):
    code, out, _ = run(capsys, "resolve", "corpus:kleinfour", "--module", "regular",
                       "--cutoff", "3")
    rows = json.loads(out)["table"]["rows"]
    assert code == 0 and rows[1]["b_n"] == 0 and rows[0]["b_n"] == 1


def test_text_and_out_file(capsys, tmp_path):
    target = tmp_path / "r.txt"
    code, out, _ = run(capsys, "complexity", "corpus:elab_3_2", "--module", "M:1",
                       "--format", "text", "--out", str(target))
    assert code == 0 and out == ""
    assert "c_hat" in target.read_text()


def test_certify_and_verify(capsys, tmp_path):
    cert = tmp_path / "d8.json"
    code, _, _ = run(capsys, "certify", "corpus:dihedral8", "--strategy", "lemma-family",
                     "--scan-field", "2", "--scan-field", "2,2", "--out", str(cert))
    assert code == 0
    assert json.loads(cert.read_text())["certificate"]["verdict"] == "TameConsistent"
    code, out, _ = run(capsys, "verify", str(cert))
    assert code == 0 and json.loads(out)["all_ok"]
    # a tampered trail verifies with exit code 1
    data = json.loads(cert.read_text())
    data["certificate"]["evidence"][1]["expected"] = [9] * 13
    cert.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", str(cert))
    assert code == 1 and not json.loads(out)["all_ok"]


def test_certify_theorem_growth(capsys):
    code, out, _ = run(capsys, "certify", "corpus:elab_2_3", "--strategy", "theorem-growth")
    assert code == 0
    assert json.loads(out)["certificate"]["verdict"] == "WildAssumingFg"


def test_factor_rule_from_saved_certificate(capsys, tmp_path):
    known = tmp_path / "e32.json"
    run(capsys, "certify", "corpus:elab_3_2", "--strategy", "lemma-family", "--scan-field", "3",
        "--out", str(known))
    code, out, _ = run(capsys, "certify", "corpus:c6_3", "--strategy", "factor",
                       "--ideal", "xy-yx", "--quotient-cert", str(known))
    assert code == 0
    assert json.loads(out)["certificate"]["verdict"] == "WildEvidence"
    code, _, err = run(capsys, "certify", "corpus:c6_3", "--strategy", "factor",
                       "--ideal", "x", "--quotient-cert", str(known))
    assert code == 3 and "QuotientMismatch" in err


def test_byte_identical_runs(capsys):
    argv = ("certify", "corpus:kleinfour", "--strategy", "lemma-family", "--seed", "7")
    first = run(capsys, *argv)[1]
    assert first == run(capsys, *argv)[1]


def test_exit_codes(capsys, tmp_path):
    # malformed input: exit 1 with file and line
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "name": "x",\n  "generators": ["x"],,\n}\n')
    code, _, err = run(capsys, "algebra-check", str(bad))
    assert code == 1 and "bad.json:3:" in err
    code, _, err = run(capsys, "algebra-check", "corpus:nowhere")
    assert code == 1
    # the completion does not close within the degree bound
    inf = write_pres(tmp_path, "free", ["x", "y"], ["xy"], bound=4)
    assert run(capsys, "algebra-check", inf)[0] == 2
    # semisimple: no augmentation radical to resolve against
    ss = write_pres(tmp_path, "ss", ["x"], ["x^2 - 1"], bound=4, p=3)
    assert run(capsys, "resolve", ss)[0] == 3
    # the family needs two radical generators
    code, _, err = run(capsys, "certify", "corpus:poly_trunc_3", "--strategy", "lemma-family")
    assert code == 3
    assert run(capsys, "resolve", "corpus:kleinfour", "--cutoff", "-1")[0] == 1


def test_module_and_field_options(capsys):
    code, out, _ = run(capsys, "resolve", "corpus:kleinfour", "--field", "2,2",
                       "--module", "M:2", "--cutoff", "8")
    assert code == 0
    rep = json.loads(out)
    assert rep["field"] == "F_4" and rep["periodic"] == 1


def test_module_main_entry_point():
    proc = subprocess.run([sys.executable, "-m", "reptype", "resolve", "corpus:kleinfour",
                           "--format", "csv", "--cutoff", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[4] == "3,4,16,7"


@pytest.mark.parametrize("fmt", ["json", "text"])
def test_verify_formats(capsys, tmp_path, fmt):
    cert = tmp_path / "t.json"
    run(capsys, "certify", "corpus:elab_2_2", "--strategy", "theorem-growth", "--out", str(cert))
    code, out, _ = run(capsys, "verify", str(cert), "--format", fmt)
    assert code == 0 and out
