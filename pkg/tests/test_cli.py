import json
import subprocess
import sys

import pytest

from nearsyn.automata import automaton_b
from nearsyn.brandt import brandt_semigroup
from nearsyn.cli import dumps, main
from nearsyn.semigroup import FiniteSemigroup, validate_semigroup


def write(path, data):
    path.write_text(dumps(data))
    return str(path)


def test_construct_add_n2(tmp_path):
    out = tmp_path / "a2.json"
    assert main(["construct", "--n", "2", "--reduct", "add", "--out", str(out)]) == 0
    S = FiniteSemigroup.from_json(json.loads(out.read_text()))
    assert S.size == 29


def test_construct_round_trip_is_byte_identical(tmp_path):
    out = tmp_path / "a2.json"
    main(["construct", "--n", "2", "--out", str(out)])
    text = out.read_text()
    assert dumps(FiniteSemigroup.from_json(json.loads(text)).to_json()) == text
    main(["construct", "--n", "2", "--bundle", "--out", str(out)])
    bundle = json.loads(out.read_text())
    assert set(bundle) >= {"n", "elements", "add_table", "mul_table", "aff"}


def test_construct_mul_n1_stdout(capsys):
    assert main(["construct", "--n", "1", "--reduct", "mul"]) == 0
    S = FiniteSemigroup.from_json(json.loads(capsys.readouterr().out))
    assert S.size == 3


def test_construct_rejects_large_n(capsys):
    assert main(["construct", "--n", "9"]) == 2
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize("n", [1, 2])
def test_verify_suite(n, tmp_path, capsys):
    assert main(["verify", "--paper", "--n", str(n), "--out-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "suite: pass" in out
    report = json.loads((tmp_path / f"report_n{n}.json").read_text())
    assert report["status"] == "pass"
    if n == 2:
        assert (tmp_path / "cert_P_n2_monoid.json").exists()


def test_verify_requires_paper_flag():
    assert main(["verify", "--n", "1"]) == 2
    assert main(["verify", "--paper", "--n", "4"]) == 2


def test_decide_b2_and_replay(tmp_path, capsys):
    path = write(tmp_path / "b2.json", brandt_semigroup(2).to_json())
    assert main(["decide", path]) == 0
    out = capsys.readouterr().out
    assert out.startswith("yes")
    cert = tmp_path / "b2.cert.json"
    assert cert.exists()
    assert main(["replay", path, str(cert)]) == 0
    # tamper with the subset
    data = json.loads(cert.read_text())
    data["subset"] = []
    bad = write(tmp_path / "bad.json", data)
    assert main(["replay", path, bad]) == 1


def test_decide_trivial(tmp_path):
    path = write(tmp_path / "one.json", validate_semigroup([[0]]).to_json())
    assert main(["decide", path, "--cert", str(tmp_path / "c.json")]) == 0


def test_decide_no(tmp_path, capsys):
    path = write(tmp_path / "lz.json", validate_semigroup([[0, 0, 0], [1, 1, 1], [2, 2, 2]]).to_json())
    assert main(["decide", path, "--format", "json"]) == 1
    assert json.loads(capsys.readouterr().out)["decision"] == "no"


def test_decide_a2_mul(tmp_path):
    path = tmp_path / "a2m.json"
    main(["construct", "--n", "2", "--reduct", "mul", "--out", str(path)])
    cert = tmp_path / "a2m.cert"
    assert main(["decide", str(path), "--cert", str(cert)]) == 0
    assert main(["replay", str(path), str(cert)]) == 0


def test_decide_unknown_exit_code(tmp_path, A2):
    path = write(tmp_path / "a2m.json", A2.mul.to_json())
    assert main(["decide", path, "--budget", "1"]) == 3


def test_bad_inputs(tmp_path, capsys):
    data = brandt_semigroup(2).to_json()
    data["table"][0][1] = 3  # breaks associativity
    bad = write(tmp_path / "bad.json", data)
    assert main(["decide", bad]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["decide", str(tmp_path / "missing.json")]) == 2
    (tmp_path / "junk.json").write_text("{not json")
    assert main(["iso", str(tmp_path / "junk.json"), bad]) == 2


def test_iso(tmp_path, capsys):
    a = write(tmp_path / "a.json", validate_semigroup([[0, 1], [1, 0]]).to_json())
    b = write(tmp_path / "b.json", validate_semigroup([[1, 0], [0, 1]]).to_json())
    c = write(tmp_path / "c.json", validate_semigroup([[0, 0], [1, 1]]).to_json())
    assert main(["iso", a, b, "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["mapping"] == [1, 0]
    assert main(["iso", a, c]) == 1


def test_automaton_commands(tmp_path, capsys):
    src = write(tmp_path / "ab.json", automaton_b().to_json())
    out = tmp_path / "min.json"
    assert main(["automaton", "minimize", "--in", src, "--out", str(out)]) == 0
    assert json.loads(out.read_text())["states"] == 3
    assert main(["automaton", "minimize", "--in", src, "--format", "dot"]) == 0
    assert capsys.readouterr().out.startswith("digraph")
    assert main(["automaton", "monoid", "--in", src]) == 0
    text = capsys.readouterr().out
    assert "f_eps" in text and "generators:" in text
    assert main(["automaton", "monoid", "--in", src, "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["table"]) == 3 and data["generators"]["a"] == 0


def test_starfree_command(tmp_path, capsys):
    out = tmp_path / "lb.json"
    assert main(["starfree", "--expr", "(0^c c 0^c)^c b (0^c c 0^c)^c", "--alphabet", "abc",
                 "--emit", str(out)]) == 0
    assert json.loads(out.read_text())["states"] == 3
    assert main(["starfree", "--expr", "a*", "--alphabet", "abc"]) == 2
    assert main(["starfree", "--expr", "d", "--alphabet", "abc"]) == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "nearsyn", "construct", "--n", "1"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0
    assert json.loads(r.stdout)["size"] == 3
