import json
import subprocess
import sys

import pytest

from creal.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_example(capsys):
    code, out, _ = call(capsys, "classify", "--field", "F4", "[[0,1];[1,1]]", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["c_real"] is True and data["n"] == 2


def test_classify_text(capsys):
    code, out, _ = call(capsys, "classify", "--field", "F4", "[[0,1];[1,1]]")
    assert code == 0 and "c-real: yes" in out and "self-dual" in out


def test_form_not_c_real_exits_1(capsys):
    code, out, _ = call(capsys, "form", "--field", "F9", "[[1+1*i,0];[0,1+1*i]]", "--format", "json")
    assert code == 1
    data = json.loads(out)
    assert data["c_real"] is False and data["witness"]["mult"] == 2


def test_census_example(capsys):
    code, out, _ = call(capsys, "census", "--field", "F4", "--n", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["total_elements"] == 180 and data["disagreements"] == []


def test_census_cap_exceeded_exits_3(capsys):
    code, _, err = call(capsys, "census", "--field", "F9", "--n", "3", "--cap", "1000")
    assert code == 3 and "unsupported" in err


@pytest.mark.parametrize("argv", [
    ["classify", "--field", "F4", "[[1,1];[1,1]]"],  # singular
    ["classify", "--field", "F4", "[[1,1;"],  # malformed
    ["classify", "--field", "F6", "[[1]]"],  # bad field
    ["classify", "--field", "F4", "[[1,0];[0,1];[1,1]]"],  # not square
    ["form", "--field", "F4", "--kind", "skew", "[[0,1];[1,1]]"],  # skew needs odd characteristic
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_witness_verify_round_trip(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    for field, mat in [("F4", "[[0,1];[1,1]]"), ("F9", "[[1+i,0];[0,2+2*i]]"), ("F4", "[[1,0];[w,1]]"),
                       ("F16", "[[u,1,0];[0,u^2,0];[0,1,1]]")]:
        code, _, _ = call(capsys, "witness", "--field", field, mat, "--format", "json", "--out", str(cert))
        assert code == 0
        code, out, _ = call(capsys, "verify", "--cert", str(cert))
        assert code == 0, out


def test_form_verify_round_trip(tmp_path, capsys):
    cert = tmp_path / "form.json"
    for kind, field in [("hermitian", "F4"), ("skew", "F9"), ("hermitian", "F25")]:
        mat = "[[0,1];[1,1]]" if field == "F4" else "[[0,1];[1,0]]"
        code, _, _ = call(capsys, "form", "--field", field, "--kind", kind, mat,
                          "--format", "json", "--out", str(cert))
        assert code == 0
        code, _, _ = call(capsys, "verify", "--cert", str(cert))
        assert code == 0


def test_verify_rejects_tampered_certificate(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    call(capsys, "witness", "--field", "F4", "[[0,1];[1,1]]", "--format", "json", "--out", str(cert))
    data = json.loads(cert.read_text())
    data["S"] = "[[1,0];[0,1]]"
    cert.write_text(json.dumps(data))
    code, _, _ = call(capsys, "verify", "--cert", str(cert))
    assert code == 1


def test_symmetric_form_trivial_involution(capsys):
    code, out, _ = call(capsys, "form", "--field", "F2", "--kind", "symmetric", "[[1]]", "--format", "json")
    assert code == 0 and json.loads(out)["H_kind"] == "symmetric-bilinear"


def test_matrix_from_file(tmp_path, capsys):
    src = tmp_path / "T.txt"
    src.write_text("[[0,1];[1,1]]\n", encoding="utf-8")
    code, out, _ = call(capsys, "classify", "--field", "F4", "--in", str(src))
    assert code == 0 and "c-real: yes" in out


def test_claimcheck_flags_identity(capsys):
    code, out, _ = call(capsys, "claimcheck", "--field", "F2", "--format", "json")
    assert code == 0
    reports = json.loads(out)["reports"]
    first = reports[0]
    assert first["T"] == "[[1]]" and first["verdict"] == "DISAGREE"


def test_qi_decision_only(capsys):
    code, out, _ = call(capsys, "classify", "--field", "Qi", "[[1+i,0];[0,1/2+1/2*i]]")
    assert code == 0 and "c-real: yes" in out
    code, _, _ = call(capsys, "classify", "--field", "Qi", "[[1+i,0];[0,1+i]]")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["witness", "--field", "F9", "[[1+i,1,0];[0,2+2*i,0];[0,0,1]]", "--seed", "5"],
    ["form", "--field", "F25", "[[0,1];[1,0]]", "--seed", "3"],
    ["census", "--field", "F4", "--n", "2", "--mode", "classes"],
])
def test_json_output_is_deterministic(capsys, argv):
    outs = set()
    for _ in range(2):
        code, out, _ = call(capsys, *argv, "--format", "json")
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "creal", "classify", "--field", "F4", "[[0,1];[1,1]]"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "c-real: yes" in res.stdout
