"""Command-line harness: suites, config, compute cache, bench, report merge."""

import json

import pytest

from specrec.cli import main
from specrec.errors import ConfigInvalid, UnknownEvaluator, UnknownSuite
from specrec.suites import SUITES, run_suite


def test_all_suites_registered():
    assert set(SUITES) == {
        "theta-feq", "selberg", "twisted-mult", "vanishing", "local-rs",
        "residue-euler", "voronoi-small-c", "bijection", "kernel-identities",
        "k-decay", "h-contour", "exponents", "amplifier",
    }
    with pytest.raises(UnknownSuite):
        run_suite("nope")


def test_verify_exit_codes(capsys):
    assert main(["verify", "exponents"]) == 0
    assert main(["verify", "unknown-suite"]) == 2
    capsys.readouterr()


def test_verify_report_lines_are_json(capsys):
    assert main(["verify", "vanishing"]) == 0
    out = capsys.readouterr().out
    recs = [json.loads(line) for line in out.splitlines() if line.strip()]
    assert recs
    for rec in recs:
        assert rec["status"] == "pass"
        assert {"suite", "case_id", "lhs", "rhs", "abs_err", "rel_err",
                "tolerance", "tail_budget", "wall_time"} <= set(rec)


def test_verify_determinism(capsys):
    main(["verify", "twisted-mult"])
    first = capsys.readouterr().out
    main(["verify", "twisted-mult"])
    second = capsys.readouterr().out

    def strip_times(text):
        return [{k: v for k, v in json.loads(l).items() if k != "wall_time"}
                for l in text.splitlines() if l.strip()]

    assert strip_times(first) == strip_times(second)


def test_config_validation(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text("[suites.theta-feq]\ntol = -3\n")
    assert main(["verify", "theta-feq", "--config", str(bad)]) == 2
    bad.write_text("[suites.theta-feq]\nq = []\n")
    assert main(["verify", "theta-feq", "--config", str(bad)]) == 2
    good = tmp_path / "good.toml"
    good.write_text("[suites.vanishing]\nq = [5]\nmultiples = [1]\n")
    assert main(["verify", "vanishing", "--config", str(good)]) == 0
    capsys.readouterr()


def test_compute_and_cache(tmp_path, capsys):
    args = ["compute", "gauss-sum", "q=5", "chi=legendre",
            "--cache", str(tmp_path)]
    assert main(args) == 0
    first = json.loads(capsys.readouterr().out)
    assert abs(first["value"]["re"] - 5 ** 0.5) < 1e-10
    assert first["cached"] is False
    assert main(args) == 0
    second = json.loads(capsys.readouterr().out)
    assert second["cached"] is True
    assert second["value"] == first["value"]


def test_compute_unknown_evaluator(capsys):
    assert main(["compute", "nope", "--no-cache"]) == 2
    capsys.readouterr()


def test_compute_theta(capsys):
    assert main(["compute", "theta", "q=5", "d=3", "n=1", "v=2+0j",
                 "--no-cache"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["error"] > 0


def test_bench(capsys):
    assert main(["bench", "kloosterman-sweep", "--size", "50"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["ops_per_sec"] > 0
    assert main(["bench", "kloosterman-sweep", "--size", "10000"]) == 2
    assert main(["bench", "nope", "--size", "1"]) == 2
    capsys.readouterr()


def test_report_merge(tmp_path, capsys):
    main(["verify", "exponents", "--out", str(tmp_path / "a.jsonl")])
    main(["verify", "vanishing", "--out", str(tmp_path / "b.jsonl")])
    capsys.readouterr()
    assert main(["report", "--merge", str(tmp_path / "a.jsonl"),
                 str(tmp_path / "b.jsonl"), str(tmp_path / "a.jsonl")]) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l.strip()]
    recs = [json.loads(l) for l in lines]
    keys = [(r["suite"], r["case_id"]) for r in recs]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_exponents_command(capsys):
    assert main(["exponents", "--alpha", "3/8", "--beta", "1/4"]) == 0
    out = capsys.readouterr().out
    assert "31/128" in out
    assert "1/16" in out
