import json

import pytest

import config
import main
from conftest import GOLDEN_DIR
from modules import cli
from modules.errors import UsageError


def _exit_cases():
    return json.loads((GOLDEN_DIR / "exit_codes.json").read_text())


def test_parse_verify():
    cmd = cli.parse(["verify", "--k", "3", "--mod", "3", "--lhs", "2", "--rhs", "0-terms"])
    assert cmd.subcommand == "verify"
    assert cmd.options["k"] == 3
    assert cmd.options["lhs"] == (2,)
    assert cmd.options["rhs"] == ()
    assert cmd.output_format == "text"


def test_parse_period():
    cmd = cli.parse(["period", "--prime", "5", "--exp", "1", "--format", "json"])
    assert cmd.subcommand == "period"
    assert (cmd.options["prime"], cmd.options["exp"]) == (5, 1)
    assert cmd.output_format == "json"


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["verify", "--k", "4", "--mod", "3"], "--lhs"),
        (["verify", "--k", "x", "--mod", "3", "--lhs", "1", "--rhs", "2"], "--k"),
        (["verify", "--k", "3", "--mod", "3", "--lhs", "1,a", "--rhs", "2"], "--lhs"),
        (["oracle", "--plane", "--n", "5"], "--k"),
        (["series", "--kind", "pl", "--mod", "5"], "--k"),
        (["period", "--prime", "3", "--k", "3", "--parts", "1"], "--parts"),
    ],
)
def test_parse_errors_name_the_flag(argv, flag):
    with pytest.raises(UsageError, match=flag):
        cli.parse(argv)


def test_parse_rejects_unknown_subcommand_and_flag():
    with pytest.raises(UsageError):
        cli.parse(["prove"])
    with pytest.raises(UsageError, match="--bogus"):
        cli.parse(["period", "--prime", "3", "--bogus"])


@pytest.mark.parametrize("case", _exit_cases(), ids=lambda c: " ".join(c["argv"]) or "<empty>")
def test_exit_codes(case):
    assert main.main(case["argv"]) == case["exit"]


def test_verify_pl7_json(capsys):
    code = main.main(["verify", "--k", "7", "--mod", "7", "--lhs", "2,3", "--rhs", "4,5", "--format", "json"])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["verdict"] == "proved-for-all-n"
    assert report["bound"] == 420


def test_text_and_json_verdicts_match(capsys):
    argv = ["verify", "--k", "3", "--mod", "3", "--lhs", "1", "--rhs", "0-terms"]
    assert main.main(argv) == 1
    text = capsys.readouterr().out
    assert main.main(argv + ["--format", "json"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert f"verdict   : {data['verdict']}" in text


def test_period_prints_closed_form(capsys):
    assert main.main(["period", "--prime", "3", "--exp", "2"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "18"


def test_period_with_explicit_parts(capsys):
    assert main.main(["period", "--prime", "2", "--parts", "1:2", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["period"] == 2


def test_oracle_prints_count(capsys):
    assert main.main(["oracle", "--plane", "--n", "5", "--k", "3"]) == 0
    assert capsys.readouterr().out.strip() == "21"
    assert main.main(["oracle", "--multi", "--n", "2", "--k", "2"]) == 0
    assert capsys.readouterr().out.strip() == "5"
    assert main.main(["oracle", "--restricted", "--n", "5", "--parts", "1:1,2:2"]) == 0
    assert capsys.readouterr().out.strip() == "6"


def test_oracle_limit_from_config(monkeypatch, capsys):
    monkeypatch.setattr(config, "ORACLE_LIMIT", 4)
    assert main.main(["oracle", "--plane", "--n", "5", "--k", "3"]) == 2
    assert "PLANECONG_ORACLE_LIMIT" in capsys.readouterr().err


def test_series(capsys):
    assert main.main(["series", "--kind", "pl", "--k", "3", "--mod", "1000", "--order", "6"]) == 0
    assert capsys.readouterr().out.strip() == "1 1 3 6 12 21"
    assert main.main(["series", "--kind", "f", "--k", "3", "--mod", "3", "--order", "6"]) == 0
    assert capsys.readouterr().out.strip() == "1 1 0 0 0 0"


def test_verify_with_stride(capsys):
    argv = ["verify", "--k", "8", "--mod", "2", "--stride", "8", "--lhs", "5", "--rhs", "0-terms",
            "--horizon", "100", "--format", "json"]
    assert main.main(argv) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"] == "holds-to-horizon"
    assert data["statement"]["stride"] == 8


def test_verify_warns_when_residues_are_reduced(capsys):
    assert main.main(["verify", "--k", "3", "--mod", "3", "--lhs", "5", "--rhs", "0-terms"]) == 0
    assert "reduced" in capsys.readouterr().err


def test_scope_error_goes_to_stderr(capsys):
    argv = ["verify", "--k", "4", "--mod", "4", "--lhs", "1", "--rhs", "2,3", "--method", "theorem-bound"]
    assert main.main(argv) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "outside" in captured.err


def test_witness_pl2_mod5(capsys):
    assert main.main(["witness", "--case", "pl2-mod5", "--horizon", "100", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["kind"] == "route"
    assert data["identity_holds"]


def test_record_writes_run_folder(tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(config, "RUN_LOG_DIR", str(tmp_path))
    argv = ["verify", "--k", "3", "--mod", "3", "--lhs", "2", "--rhs", "0-terms", "--record"]
    assert main.main(argv) == 0
    folders = list(tmp_path.iterdir())
    assert len(folders) == 1
    names = {p.name for p in folders[0].iterdir()}
    assert {"command.txt", "verify.json", "summary.pdf"} <= names
    assert "--record" in (folders[0] / "command.txt").read_text()


def test_record_failure_is_an_error(tmp_path, monkeypatch, capsys):
    blocker = tmp_path / "not-a-dir"
    blocker.write_text("")
    monkeypatch.setattr(config, "RUN_LOG_DIR", str(blocker))
    argv = ["verify", "--k", "3", "--mod", "3", "--lhs", "2", "--rhs", "0-terms", "--record"]
    assert main.main(argv) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("planecong: error:")


def test_verify_rejects_cancelled_statement(capsys):
    assert main.main(["verify", "--k", "3", "--mod", "3", "--lhs", "1", "--rhs", "1"]) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "trivial" in captured.err
