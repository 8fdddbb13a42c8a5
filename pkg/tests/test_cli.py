import json
import subprocess
import sys

import pytest

from cyglue.cli import main, parse_bindings, parse_center_override
from cyglue.scenarios import ScenarioError


def cli(*args):
    return subprocess.run([sys.executable, "-m", "cyglue", *args], capture_output=True, text=True)


def test_verify_main_json():
    p = cli("verify", "main", "--param", "a=1")
    assert p.returncode == 0, p.stderr
    d = json.loads(p.stdout)
    assert d["invariants"]["b2_x"] == 4 and d["status"] == "pass"
    for key in ("scenario", "parameters", "hypotheses", "invariants", "certificates",
                "projectivity", "algdim", "expectations"):
        assert key in d


def test_verify_center_override_exits_1():
    p = cli("verify", "main", "--param", "a=1", "--center", "1:-1=20,-4,12")
    assert p.returncode == 1
    d = json.loads(p.stdout)
    assert d["hypotheses"]["d_semistable"]["value"] is False
    assert any(e["name"] == "d_semistable" and not e["pass"] for e in d["expectations"])


def test_verify_invalid_parameter_exits_2():
    p = cli("verify", "arbitrary_b2", "--param", "a=1", "c=14")
    assert p.returncode == 2
    assert "8a^2+6" in p.stderr


@pytest.mark.parametrize("argv", [
    ["verify", "nope"],
    ["verify", "main"],
    ["verify", "main", "--param", "a"],
    ["verify", "main", "--param", "a=x"],
    ["verify", "main", "--param", "a=1..3"],
    ["verify", "main", "--param", "a=1", "--checks", "bogus"],
    ["verify", "main", "--param", "a=1", "--center", "1=2"],
])
def test_input_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_text_format_and_checks(capsys):
    assert main(["verify", "oguiso", "--param", "a=2", "--format", "text", "--checks", "invariants"]) == 0
    out = capsys.readouterr().out
    assert "b2(X)=1" in out and "projectivity" not in out


def test_sweep_text(capsys):
    assert main(["sweep", "main", "--param", "a=1..3", "--workers", "1"]) == 0
    out = capsys.readouterr().out
    assert "-256a^2+32a-224" in out and "3/3 passed" in out


def test_sweep_with_invalid_items_exits_1(capsys):
    assert main(["sweep", "arbitrary_b2", "--param", "a=1", "c=12..14", "--workers", "1"]) == 1
    assert "error at" in capsys.readouterr().out


def test_empty_sweep(capsys):
    assert main(["sweep", "main", "--param", "a=1..0"]) == 0
    assert "empty" in capsys.readouterr().out


def test_report_rerender(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["verify", "main", "--param", "a=1", "-o", str(path)]) == 0
    assert main(["report", str(path), "--format", "text"]) == 0
    assert "status: pass" in capsys.readouterr().out
    assert main(["report", str(path), "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == json.loads(path.read_text())
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["report", str(bad)]) == 2


def test_certify_ample(capsys):
    assert main(["certify-ample", "--lattice", "oguiso", "--a", "2", "--k", "2", "--zbound", "20"]) == 0
    assert "certified" in capsys.readouterr().out
    assert main(["certify-ample", "--a", "1", "--k", "40"]) == 1
    assert main(["certify-ample", "--lattice", "wehler", "--class", "1,1,1", "--format", "json"]) == 0
    assert main(["certify-ample", "--lattice", "wehler", "--class", "1,0,0"]) == 1
    assert main(["certify-ample", "--lattice", "oguiso"]) == 2


def test_resource_error_exit_3(tmp_path, monkeypatch):
    import cyglue.scenarios as sc
    from cyglue.projectivity import classify as real

    monkeypatch.setattr(sc, "classify", lambda g: real(g, max_rank=1))
    assert main(["verify", "main", "--param", "a=1"]) == 3


def test_binding_parser():
    assert parse_bindings(["a=1..3", "c=2,5"]) == {"a": [1, 2, 3], "c": [2, 5]}
    assert parse_center_override("2:0=1,2,3") == (2, 0, [1, 2, 3])
    with pytest.raises(ScenarioError):
        parse_bindings(["=3"])
