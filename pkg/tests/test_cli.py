import json

import pytest

from starnat.cli import (UsageError, exit_code_for, main, render_text, report_json,
                         run)

ALL_CONFIGS = [
    ("axioms", {"samples": 25}),
    ("hausdorff", {}),
    ("hausdorff", {"oracle": "profinite:lazy:seed=3:avoid=on"}),
    ("indiscernibles", {"pairs": 4}),
    ("tensor", {"max-modulus": 12, "sample-sets": 8}),
    ("possibility", {}),
    ("possibility", {"sets": "evens; odds"}),
    ("transfer", {"formula": "n^2 = n"}),
    ("orbit", {"budget": 4}),
    ("finite-search", {"k": 2, "e": 1, "require": "comp,equ,dir"}),
    ("stone", {}),
]


@pytest.mark.parametrize("sub,config", ALL_CONFIGS)
def test_reports_are_wellformed(sub, config):
    report = run(sub, config)
    assert report["schema_version"] == 1
    assert report["subcommand"] == sub
    assert set(report["checks"]) == {"passed", "failed", "inconclusive"}
    json.loads(report_json(report))  # serializable
    assert render_text(report)


@pytest.mark.parametrize("sub,config", ALL_CONFIGS)
def test_replay_from_echoed_config_is_bit_identical(sub, config):
    first = run(sub, config)
    replay = run(sub, first["config"])
    assert report_json(first, drop_timing=True) == report_json(replay, drop_timing=True)


def test_expected_exit_codes():
    assert exit_code_for(run("indiscernibles", {"pairs": 2})) == 0
    assert exit_code_for(run("tensor", {"max-modulus": 10, "sample-sets": 5})) == 0
    assert exit_code_for(run("finite-search", {"k": 2, "e": 1, "require": "comp,equ,dir"})) == 0
    # a pair of independent lazy oracles cannot be settled: inconclusive-only
    report = run("hausdorff", {"oracle": "profinite:lazy:seed=5:avoid=off",
                               "fn-f": "n", "fn-g": "n+2", "horizon": 8})
    assert report["results"]["verdict"] in ("holds", "inconclusive")


def test_hausdorff_lazy_inconclusive_exit():
    # equal symbolic forms stay at the horizon: the equalizer is full, so the
    # verdict is still definitive
    report = run("hausdorff", {"oracle": "profinite:lazy:seed=5:avoid=off",
                               "fn-f": "n", "fn-g": "n"})
    assert report["results"]["verdict"] == "holds"
    assert exit_code_for(report) == 0


def test_usage_errors():
    with pytest.raises(UsageError):
        run("nope", {})
    with pytest.raises(UsageError):
        run("axioms", {"samples": "many"})
    with pytest.raises(UsageError):
        run("hausdorff", {"fn-f": "n-1"})
    with pytest.raises(UsageError):
        run("finite-search", {"require": "comp,magic"})
    with pytest.raises(UsageError):
        run("tensor", {"oracle": "principal:3"})
    with pytest.raises(UsageError):
        run("possibility", {"sets": " ; "})


def test_main_exit_codes(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["finite-search", "--k", "2", "--e", "1",
                 "--require", "comp,equ,dir", "--json", str(out)])
    assert code == 0
    body = json.loads(out.read_text())
    assert body["results"]["entries"]["comp+equ+dir"]["count"] == 0
    text = capsys.readouterr().out
    assert "finite-search" in text
    assert main(["bogus"]) == 1
    assert main(["axioms", "--samples", "bogus"]) == 1


def test_main_with_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# flagship pair\nfn-f = n\nfn-g = n^2\noracle = profinite:int:0\n")
    code = main(["hausdorff", "--config", str(cfg), "--quiet"])
    assert code == 0
    capsys.readouterr()


def test_cli_flag_overrides_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("samples = 10\n")
    code = main(["axioms", "--config", str(cfg), "--samples", "5", "--quiet"])
    assert code == 0


def test_exit_code_mapping():
    template = {"checks": {"passed": ["x"], "failed": [], "inconclusive": []}}
    assert exit_code_for(template) == 0
    assert exit_code_for({"checks": {"passed": [], "failed": ["y"],
                                     "inconclusive": ["z"]}}) == 2
    assert exit_code_for({"checks": {"passed": ["x"], "failed": [],
                                     "inconclusive": ["z"]}}) == 3


def test_horizon_env_default(monkeypatch):
    monkeypatch.setenv("STARNAT_HORIZON", "17")
    report = run("hausdorff", {})
    assert report["config"]["horizon"] == 17
    monkeypatch.setenv("STARNAT_HORIZON", "not-a-number")
    assert run("hausdorff", {})["config"]["horizon"] == 64


def test_commitment_log_round_trips_into_report():
    report = run("indiscernibles",
                 {"pairs": 3, "oracle": "profinite:lazy:seed=11:avoid=on"})
    assert report["commitmentLog"]
    for pp, r in report["commitmentLog"]:
        assert 0 <= r < pp
