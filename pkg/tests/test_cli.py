import json
import re
import subprocess
import sys

import pytest

from qverify.cli import main, run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_json(capsys):
    code, out, _ = call(capsys, "verify", "--id", "thm1", "--order", "30", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["outcome"] == "pass" and data["order"] == 30 and data["first_mismatch"] is None


def test_verify_default_order(capsys):
    code, out, _ = call(capsys, "verify", "--id", "cor23")
    assert code == 0 and "N=100" in out and "PASS" in out


def test_unknown_identity_is_usage_error(capsys):
    code, _, err = call(capsys, "verify", "--id", "nosuch")
    assert code == 2
    assert "unknown identity: nosuch" in err


def test_bad_flags_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["verify", "--id", "thm1", "--order", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["table", "--format", "xml"])
    assert exc.value.code == 2


def test_table_text(capsys):
    code, out, _ = call(capsys, "table", "--n", "6", "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["partition", "t", "w1", "w2", "||", "partition", "t", "p2", "r2", "what1", "r1", "what2"]
    assert re.search(r"\(1\^2,2\^2\)\s+2\s+2\s+2\s+4\s+2\s+4", out)
    assert lines[-1].split() == ["Total:", "0", "2", "||", "0", "2"]


def test_table_json_and_csv(capsys):
    _, out, _ = call(capsys, "table", "--n", "6", "--format", "json")
    assert json.loads(out)["A"]["total"] == {"what1": 0, "what2": 2}
    _, out, _ = call(capsys, "table", "--n", "6", "--format", "csv")
    assert out.startswith("set,partition,")


def test_coeffs(capsys):
    code, out, _ = call(capsys, "coeffs", "--id", "cor23", "--order", "9", "--format", "csv")
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()]
    assert rows[0] == ["q", "lhs", "rhs"]
    assert [r[1] for r in rows[1:]] == ["0", "-1", "0", "0", "1", "0", "0", "0", "0", "-1"]
    _, out, _ = call(capsys, "coeffs", "--id", "jtp", "--order", "4", "--format", "json")
    data = json.loads(out)
    assert data["lhs"]["order"] == 4
    assert data["lhs"]["terms"][1] == {"q": 1, "coeff": [{"m": {"z": -1}, "c": "1"}, {"m": {"z": 1}, "c": "1"}]}
    code, _, err = call(capsys, "coeffs", "--id", "jtp", "--order", "4", "--format", "csv")
    assert code == 2 and "symbol-free" in err


def test_partitions_listing(capsys):
    code, out, _ = call(capsys, "partitions", "--n", "4", "--class", "a", "--format", "json")
    assert code == 0
    assert [r["partition"] for r in json.loads(out)] == ["(4^1)", "(1^1,3^1)", "(1^2,2^1)", "(1^4)"]


def test_partitions_weighted(capsys):
    code, out, _ = call(capsys, "partitions", "--n-max", "6", "--class", "d", "--weight", "w2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[-1] == "6,2"
    code, _, err = call(capsys, "partitions", "--n-max", "6", "--class", "a", "--weight", "w2")
    assert code == 2 and "defined on class D" in err


def test_verify_all_with_order(capsys):
    code, out, _ = call(capsys, "verify-all", "--order", "5", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert {d["order"] for d in data} == {5}
    assert [d["id"] for d in data] == sorted(d["id"] for d in data)


def test_out_path(tmp_path, capsys):
    target = tmp_path / "t.txt"
    code, out, _ = call(capsys, "table", "--n", "3", "--out", str(target))
    assert code == 0 and out == ""
    assert "Total:" in target.read_text()


def _strip_timing(text):
    return re.sub(r'"elapsed_ms": [0-9.]+', '"elapsed_ms": X', text)


def test_deterministic_output(capsys):
    for argv in (["table", "--n", "7", "--format", "csv"], ["coeffs", "--id", "raw", "--order", "6", "--format", "json"],
                 ["verify", "--id", "lebesgue", "--order", "12", "--format", "json"]):
        _, first, _ = call(capsys, *argv)
        _, second, _ = call(capsys, *argv)
        assert _strip_timing(first) == _strip_timing(second)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qverify", "verify", "--id", "nosuch"], capture_output=True, text=True)
    assert proc.returncode == 2
    proc = subprocess.run([sys.executable, "-m", "qverify", "verify", "--id", "jtp", "--order", "25"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout


def test_failing_verification_exit_1(monkeypatch, capsys):
    from qverify import identities
    from qverify.acceptance import MUTANT
    monkeypatch.setitem(identities.REGISTRY, "thm1-mutant", MUTANT)
    code, out, _ = call(capsys, "verify", "--id", "thm1-mutant", "--order", "4")
    assert code == 1 and "FAIL" in out and "q^1" in out
