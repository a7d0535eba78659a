import json
import subprocess
import sys
from fractions import Fraction

import pytest

from uqbl import cli
from uqbl.fock import basis_list, fock_module
from uqbl.verify import (
    GROUPS,
    ConfigError,
    RunConfig,
    build_checks,
    config_from_env,
    decompose,
    dumps,
    format_state,
    parse_state,
    run,
)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(rank=1).validated()
    with pytest.raises(ConfigError):
        RunConfig(max_degree=Fraction(-1)).validated()
    with pytest.raises(ConfigError):
        RunConfig(max_degree=Fraction(1, 3)).validated()
    with pytest.raises(ConfigError):
        RunConfig(mode_bound=0).validated()
    with pytest.raises(ConfigError):
        RunConfig(groups=()).validated()
    with pytest.raises(ConfigError):
        RunConfig(groups=("serre", "bogus")).validated()
    with pytest.raises(ConfigError):
        RunConfig(modules=("2",)).validated()
    cfg = RunConfig(modules=("l", "Lambda_0", "0"), groups=("serre", "drinfeld")).validated()
    assert cfg.modules == ("0", "l")
    assert cfg.groups == ("drinfeld", "serre")


def test_env_overrides():
    env = {"UQBL_RANK": "3", "UQBL_MAX_DEGREE": "3/2", "UQBL_GROUP": "serre, fock-algebra", "UQBL_JOBS": ""}
    assert config_from_env(env) == {"rank": 3, "max_degree": Fraction(3, 2), "groups": ("serre", "fock-algebra")}
    with pytest.raises(ConfigError):
        config_from_env({"UQBL_RANK": "two"})


def test_fock_algebra_run():
    report, code = run(RunConfig(rank=2, max_degree=Fraction(1), groups=("fock-algebra",)))
    assert code == 0
    assert report["schema"] == 1
    assert report["summary"]["failed"] == 0
    assert report["summary"]["checks"] == len(report["results"]) > 0
    assert "timing" not in report


def test_ramond_degree_zero_split():
    report, code = run(RunConfig(rank=2, max_degree=Fraction(0), groups=("g-decomposition",), modules=("l",)))
    assert code == 0
    split = [r for r in report["results"] if r["relation"] == "highest-weight-split"]
    assert len(split) == 1 and split[0]["status"] == "pass"
    rows = decompose(fock_module(2, "l"), 0)
    assert rows[0]["highest_weight_G+"] == rows[0]["highest_weight_G-"] == 1


def test_decompose_vacuum_row():
    rows = decompose(fock_module(2, "0"), 1)
    assert (rows[0]["degree"], rows[0]["dim"], rows[0]["G+"], rows[0]["G-"]) == ("0", 1, 1, 0)


def test_report_is_deterministic_across_jobs():
    cfg = dict(rank=2, max_degree=Fraction(1), mode_bound=1, groups=("chevalley", "fock-algebra"))
    a = dumps(run(RunConfig(jobs=1, **cfg))[0])
    b = dumps(run(RunConfig(jobs=2, **cfg))[0])
    c = dumps(run(RunConfig(jobs=1, **cfg))[0])
    assert a == b == c


def test_checks_are_sorted():
    checks = build_checks(RunConfig(max_degree=Fraction(1, 2), mode_bound=1, groups=("chevalley", "drinfeld")).validated())
    keys = [c.sort_key() for c in checks]
    assert keys == sorted(keys)


def test_odd_rank_ramond_vertex_operators_fail_honestly():
    report, code = run(RunConfig(rank=3, max_degree=Fraction(0), mode_bound=1, groups=("vo-normalization",), modules=("l",)))
    assert code == 1
    (rec,) = report["results"]
    assert rec["relation"] == "unsupported" and rec["status"] == "fail"


@pytest.mark.parametrize("label", ["0", "1", "l"])
def test_state_syntax_round_trip(label):
    mod = fock_module(2, label)
    for m in basis_list(mod, Fraction(3, 2)):
        text = format_state(mod, m)
        mod2, v = parse_state(text, 2)
        assert mod2 is mod
        assert list(v.terms) == [m]


def test_state_syntax_errors():
    with pytest.raises(ConfigError):
        parse_state("a(1,-1);;0,0", 2)
    with pytest.raises(ConfigError):
        parse_state("b(1);;0,0;0", 2)
    with pytest.raises(ConfigError):
        parse_state(";psi(0);0,0;0", 2)
    with pytest.raises(ConfigError):
        parse_state(";;0;0", 2)


def test_cli_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--group", "fock-algebra", "-D", "1/2", "--output", "text")
    assert code == 0 and "0 failed" in out
    code, _, err = run_cli(capsys, "verify", "--group", "nope")
    assert code == 2 and "unknown relation group" in err
    code, _, _ = run_cli(capsys, "verify", "--rank", "1")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--max-degree", "x"])
    assert exc.value.code == 2
    code, out, _ = run_cli(capsys, "verify", "--list-groups")
    assert out.split() == list(GROUPS)


def test_cli_failure_exit_code(capsys):
    code, out, _ = run_cli(capsys, "verify", "--rank", "3", "--module", "l", "-g", "vo-normalization", "-D", "0")
    assert code == 1
    assert json.loads(out)["summary"]["failed"] == 1


def test_cli_env(capsys, monkeypatch):
    monkeypatch.setenv("UQBL_GROUP", "isomorphism")
    monkeypatch.setenv("UQBL_MAX_DEGREE", "1/2")
    code, out, _ = run_cli(capsys, "verify", "--module", "0")
    rep = json.loads(out)
    assert code == 0
    assert rep["config"]["groups"] == ["isomorphism"]
    assert rep["config"]["max_degree"] == "1/2"
    code, out, _ = run_cli(capsys, "verify", "--module", "0", "-D", "0")
    assert json.loads(out)["config"]["max_degree"] == "0"


def test_cli_matelem(capsys):
    code, out, _ = run_cli(capsys, "matelem", "--family", "typeI", "--component", "5", "--mode", "0", "--ket", ";;0,0;0", "--bra", ";;0,0;1")
    assert (code, out.strip()) == (0, "1")
    args = ["matelem", "--family", "I", "--component", "3", "--mode", "0", "--ket", ";;0,0;l", "--bra", ";psi(0);0,0;l"]
    code, out, _ = run_cli(capsys, *args)
    assert out.strip() == "1"
    code, out, _ = run_cli(capsys, *args, "--normalization", "closed-form", "--output", "json")
    assert json.loads(out)["value"] == "1"
    code, out, _ = run_cli(capsys, "matelem", "--family", "I", "--component", "1", "--mode", "0", "--ket", ";;0,0;1", "--bra", ";;0,0;0", "--normalization", "closed-form")
    assert out.strip() == "(t^2 + 1)/(t)"
    code, _, err = run_cli(capsys, "matelem", "--family", "I", "--component", "5", "--mode", "0", "--ket", ";;0,0;0", "--bra", ";;0,0;l")
    assert code == 2 and "maps into" in err


def test_cli_basis_and_decompose(capsys):
    code, out, _ = run_cli(capsys, "basis", "-D", "1/2", "--module", "0", "--irreducible")
    rows = json.loads(out)["basis"]["Lambda_0"]
    assert [r["state"] for r in rows] == [";;0,0;0"]
    code, out, _ = run_cli(capsys, "basis", "-D", "1", "--module", "l")
    graded = json.loads(out)["graded"]["Lambda_l"]
    assert [(g["dim"], g["dim_G_plus"], g["dim_G_minus"]) for g in graded] == [(8, 4, 4), (40, 20, 20)]
    code, out, _ = run_cli(capsys, "decompose", "-D", "0", "--module", "l", "--output", "text")
    assert code == 0
    assert out.splitlines()[2].split() == ["0", "8", "4", "4", "1", "1"]


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "uqbl.cli", "decompose", "-D", "0", "--module", "0"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["decomposition"]["Lambda_0"][0]["dim"] == 1
