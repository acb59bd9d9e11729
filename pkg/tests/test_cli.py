import json

import pytest

from aginorm.catalog import registry_list
from aginorm.cli import main, parse_grid


def test_list(capsys):
    assert main(["list"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) >= 16
    assert [line.split()[0] for line in lines] == [c.id for c in registry_list()]


def test_verify_clean(capsys):
    assert main(["verify", "--ineq", "audenaert", "--dims", "2..4", "--trials", "100", "--seed", "42"]) == 0
    assert "violations=0" in capsys.readouterr().out


def test_verify_expect_violations(tmp_path):
    out = tmp_path / "r.json"
    argv = ["verify", "--ineq", "hs-refined:as-printed", "--dims", "1..2", "--trials", "200", "--seed", "7",
            "--out", str(out)]
    assert main(argv + ["--expect-violations"]) == 0
    assert json.loads(out.read_text())["summary"]["violations"] > 0
    assert main(argv) == 1


def test_expect_violations_fails_on_clean_checker():
    assert main(["verify", "--ineq", "audenaert", "--trials", "5", "--expect-violations"]) == 1


def test_every_registry_id_reachable():
    for case in registry_list():
        for v in case.variants:
            ineq = case.id if v.value == "proof-consistent" else f"{case.id}:{v.value}"
            code = main(["verify", "--ineq", ineq, "--dims", "1..2", "--trials", "3"])
            assert code in (0, 1)


def test_reports_reproducible(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(["verify", "--ineq", "zou-jiang", "--trials", "20", "--seed", "5", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert paths[0].read_text().startswith("trial,dim,p,")


@pytest.mark.parametrize("argv", [
    ["verify"],
    ["verify", "--ineq", "audenaert", "--bogus"],
    ["verify", "--ineq", "nope"],
    ["verify", "--ineq", "audenaert", "--dims", "x"],
    ["verify", "--ineq", "audenaert", "--norm", "kyfan:9"],
    ["verify", "--ineq", "thm21", "--norm", "hs"],
    ["sweep", "--ineq", "audenaert", "--grid", "1:0:0.1"],
    ["sweep", "--ineq", "audenaert", "--param", "m", "--grid", "0:1:0.5"],
    ["search", "--ineq", "audenaert", "--budget", "0"],
    ["compound", "--n", "3", "--k", "4"],
    ["frobnicate"],
])
def test_bad_flags_exit_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err


def test_io_failure_exit_3(tmp_path):
    assert main(["verify", "--ineq", "audenaert", "--trials", "2", "--out", str(tmp_path / "no" / "x.json")]) == 3


def test_bad_thread_env(monkeypatch):
    monkeypatch.setenv("AGINORM_THREADS", "zero")
    assert main(["verify", "--ineq", "audenaert", "--trials", "2"]) == 2
    monkeypatch.setenv("AGINORM_THREADS", "3")
    assert main(["verify", "--ineq", "audenaert", "--trials", "2"]) == 0


def test_grid_parsing():
    assert parse_grid("0:1:0.25") == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert parse_grid("0:1:0.3") == pytest.approx([0.0, 0.3, 0.6, 0.9])
    assert parse_grid("0.1:0.3:0.1")[-1] == 0.3
    assert parse_grid("2:2:1") == [2.0]


def test_sweep_csv(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--ineq", "thm38", "--grid", "0.1:0.9:0.4", "--trials", "10", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("param,value,trials,violations")
    assert [line.split(",")[1] for line in lines[1:]] == ["0.1", "0.5", "0.9"]
    assert main(["sweep", "--ineq", "remark35", "--param", "s", "--grid", "0:1:0.5", "--trials", "5"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 4


def test_sweep_as_printed_expectation():
    argv = ["sweep", "--ineq", "hs-refined:as-printed", "--dims", "1..1", "--grid", "0.5:0.5:1", "--trials", "50"]
    assert main(argv) == 1
    assert main(argv + ["--expect-violations"]) == 0


def test_search_cli(tmp_path, capsys):
    out = tmp_path / "s.json"
    assert main(["search", "--ineq", "audenaert", "--mode", "tighten", "--budget", "300", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["mode"] == "tighten"
    assert main(["search", "--ineq", "hs-refined:as-printed", "--mode", "violate", "--budget", "300",
                 "--dims", "1..2", "--expect-violations"]) == 0
    assert main(["search", "--ineq", "hs-refined:as-printed", "--mode", "violate", "--budget", "300",
                 "--dims", "1..2"]) == 1


def test_compound_demo(capsys):
    assert main(["compound", "--n", "4", "--k", "2", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    residuals = [float(line.split()[-1]) for line in out.splitlines() if line.startswith("residual")]
    assert len(residuals) == 5 and max(residuals) < 1e-10


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
