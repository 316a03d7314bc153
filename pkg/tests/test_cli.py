import json

import pytest
from click.testing import CliRunner

from fermat_prank import cli as cli_mod
from fermat_prank.cli import cli, main


def run(*args):
    return CliRunner().invoke(cli, list(args))


def run_main(args, capsys):
    with pytest.raises(SystemExit) as exc:
        main(list(args))
    out = capsys.readouterr()
    return exc.value.code, out.out, out.err


def one_json(text):
    (line,) = text.strip().splitlines()
    return json.loads(line)


def test_prank_fermat_example():
    r = run("prank", "--p", "5", "--m", "4", "--n", "4", "--format", "json")
    assert r.exit_code == 0, r.output
    rec = one_json(r.output)
    assert list(rec) == list(cli_mod.RECORD_KEYS)
    assert rec["gamma"] == "3" and rec["genus"] == "3" and rec["status"] == "ok"
    assert set(rec["agreement"].values()) == {"3"} and "oracle" in rec["agreement"]


def test_prank_supersingular_example():
    rec = one_json(run("prank", "--p", "2", "--m", "3", "--n", "3", "--format", "json").output)
    assert rec["gamma"] == "0" and rec["supersingular"] is True


def test_prank_dn_example():
    rec = one_json(run("prank", "--p", "3", "--curve", "dn", "--n", "4", "--format", "json").output)
    assert rec["gamma"] == "2" and rec["status"] == "ok"


@pytest.mark.parametrize("curve,p,h,gamma", [("dgz", 3, 1, "58"), ("bks", 5, 1, "9")])
def test_prank_covers(curve, p, h, gamma):
    rec = one_json(run("prank", "--p", str(p), "--curve", curve, "--h", str(h), "--format", "json").output)
    assert rec["gamma"] == gamma and rec["genus"] is None and rec["status"] == "ok"


def test_gamma_is_always_a_string():
    r = run("prank", "--p", "13", "--curve", "dgz", "--h", "4", "--method", "closed", "--format", "json")
    rec = one_json(r.output)
    assert isinstance(rec["gamma"], str) and int(rec["gamma"]) > 2**53


@pytest.mark.parametrize("method", ["naive", "dp", "oracle", "closed"])
def test_prank_methods(method):
    rec = one_json(run("prank", "--p", "5", "--m", "4", "--n", "2", "--method", method, "--format", "json").output)
    assert rec["gamma"] == "1"


def test_prank_family():
    r = run("prank", "--p", "5", "--family", "S7_final", "--param", "m=2", "--param", "n=2", "--format", "json")
    rec = one_json(r.output)
    assert rec["gamma"] == "27" and rec["agreement"]["counter"] == "27"


@pytest.mark.parametrize(
    "args",
    [
        ["prank", "--p", "4", "--m", "3", "--n", "3"],
        ["prank", "--p", "5", "--m", "5", "--n", "3"],
        ["prank", "--p", "5", "--m", "3"],
        ["prank", "--p", "5", "--m", "3", "--n", "4", "--method", "closed"],
        ["prank", "--p", "7", "--family", "C47_char2_zero", "--param", "m=3", "--param", "n=3"],
        ["table", "--table", "9", "--p", "7"],
        ["sweep", "--p-list", "3", "--m-range", "5..2", "--n-range", "2"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_2(args, capsys):
    code, _, err = run_main(args, capsys)
    assert code == 2
    assert err


def test_success_exit_0(capsys):
    code, out, _ = run_main(["prank", "--p", "5", "--m", "4", "--n", "4"], capsys)
    assert code == 0 and "| 3 |" in out


def test_internal_error_exit_3(monkeypatch, capsys):
    from fermat_prank.errors import InvariantViolation

    def boom(*a, **k):
        raise InvariantViolation("synthetic")

    monkeypatch.setattr(cli_mod, "prank_general", boom)
    code, _, err = run_main(["prank", "--p", "5", "--m", "4", "--n", "4"], capsys)
    assert code == 3 and "synthetic" in err


def test_prank_mismatch_exit_3(monkeypatch, capsys):
    monkeypatch.setattr(cli_mod, "prank_oracle", lambda ctx: type("R", (), {"gamma": 99})())
    code, out, _ = run_main(["prank", "--p", "5", "--m", "4", "--n", "4", "--format", "json"], capsys)
    assert code == 3 and one_json(out)["status"] == "MISMATCH"


def test_verify_mismatch_exit_1(monkeypatch, capsys):
    from fermat_prank.verify import SuiteResult

    monkeypatch.setattr(cli_mod, "run_suite", lambda name, **kw: SuiteResult(name, 1, 1, ["x"]))
    code, out, _ = run_main(["verify", "--suite", "appendix"], capsys)
    assert code == 1 and "FAIL" in out


def test_verify_pass(capsys):
    code, out, _ = run_main(["verify", "--suite", "lemma53", "--jobs", "1", "--format", "csv"], capsys)
    assert code == 0
    assert out.splitlines()[1].startswith("lemma53,pass,")


def test_sweep_grid_size():
    r = run("sweep", "--p-list", "3", "--m-range", "2..6", "--n-range", "2..6", "--format", "json", "--jobs", "1")
    assert r.exit_code == 0
    assert len(r.output.strip().splitlines()) == 25


def test_sweep_csv_contract():
    r = run("sweep", "--p-list", "5", "--m-range", "2..4", "--n-range", "2..4", "--format", "csv", "--jobs", "1")
    lines = r.output.split("\n")
    assert lines[0] == "p,m,n,genus,gamma"
    assert "\r" not in r.output and lines[-1] == ""
    assert "5,4,4,3,3" in lines


def test_sweep_supersingular_rows():
    r = run("sweep", "--p-list", "2,3", "--m-range", "3..3", "--n-range", "3..3", "--format", "json", "--jobs", "1")
    recs = [json.loads(x) for x in r.output.splitlines()]
    assert recs[0] == {"p": 2, "m": 3, "n": 3, "genus": "1", "gamma": "0"}
    assert "error" in recs[1]


def test_sweep_jobs_preserve_order():
    args = ["sweep", "--p-list", "2,3,5,7", "--m-range", "2..9", "--n-range", "2..9", "--format", "csv"]
    serial = run(*args, "--jobs", "1").output
    parallel = run(*args, "--jobs", "3").output
    assert serial == parallel


def test_classify():
    r = run("classify", "--p-list", "2", "--m-range", "3", "--n-range", "3,5", "--format", "json", "--jobs", "1")
    a, b = (json.loads(x) for x in r.output.splitlines())
    assert a["supersingular"] is True and a["special_rule"] is True
    assert b["gamma"] == "0" and b["supersingular"] is False


def test_table_command_file(tmp_path):
    out = tmp_path / "t.md"
    r = run("table", "--table", "3", "--p", "3", "--r", "1..2", "-o", str(out))
    assert r.exit_code == 0
    text = out.read_text()
    assert "| 3 | C52_i | y^2 = x^8 + 1 | r=2 | 3 | gamma | 2 | 2 | ok |" in text
