import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from kmlab.cli import main

DATA = Path(__file__).resolve().parent.parent / "data" / "gcm"


@pytest.fixture
def runner():
    return CliRunner()


def test_classify_finite(runner):
    res = runner.invoke(main, ["classify", str(DATA / "a2.json")])
    assert res.exit_code == 0
    assert res.output.strip() == "Finite"


def test_classify_affine_with_delta(runner):
    res = runner.invoke(main, ["classify", str(DATA / "a1tilde.json")])
    assert res.exit_code == 0
    assert res.output.strip() == "Affine, δ=(1,1)"


def test_classify_invalid_matrix(runner, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"name": "bad", "matrix": [[2, 1], [-1, 2]]}))
    res = runner.invoke(main, ["classify", str(p)])
    assert res.exit_code == 1
    assert "positive-off-diagonal" in res.output


def test_classify_malformed_file(runner, tmp_path):
    p = tmp_path / "garbage.json"
    p.write_text("not json at all")
    res = runner.invoke(main, ["classify", str(p)])
    assert res.exit_code == 2


def test_degree_command(runner):
    res = runner.invoke(
        main,
        ["degree", "--gcm", str(DATA / "g2.json"), "--word", "1,2,1,2,1,2"],
    )
    assert res.exit_code == 0
    assert res.output.startswith("degree 5 ")


def test_degree_bad_word(runner):
    res = runner.invoke(
        main, ["degree", "--gcm", str(DATA / "a2.json"), "--word", "1,x"]
    )
    assert res.exit_code == 2


def test_sweep_records_and_summary(runner, tmp_path):
    out = tmp_path / "s.csv"
    res = runner.invoke(
        main,
        ["sweep", "--gcm", str(DATA / "a1tilde.json"), "--max-length", "12",
         "--out", str(out)],
    )
    assert res.exit_code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "word;length;invset_size;degree;max_chain;witness"
    # the infinite dihedral group has 1 + 2L elements up to length L
    assert len(lines) - 1 == 25
    assert "25 records" in res.output
    summary = json.loads((tmp_path / "s.csv.summary.json").read_text())
    assert summary["global_max"] == 1
    assert summary["plateau"] is True
    assert summary["count"] == 25


def test_sweep_deterministic_bytes(runner, tmp_path):
    args = ["sweep", "--gcm", str(DATA / "g2.json"), "--max-length", "6"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert runner.invoke(main, args + ["--out", str(a)]).exit_code == 0
    assert runner.invoke(main, args + ["--out", str(b)]).exit_code == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_cold_vs_warm_cache(runner, tmp_path):
    cache = tmp_path / "cache"
    args = [
        "sweep", "--gcm", str(DATA / "hyp2.json"), "--max-length", "8",
        "--cache-dir", str(cache),
    ]
    cold, warm = tmp_path / "cold.csv", tmp_path / "warm.csv"
    assert runner.invoke(main, args + ["--out", str(cold)]).exit_code == 0
    assert any(cache.iterdir())
    assert runner.invoke(main, args + ["--out", str(warm)]).exit_code == 0
    assert cold.read_bytes() == warm.read_bytes()


def test_sweep_workers_match_serial(runner, tmp_path):
    serial, pooled = tmp_path / "serial.csv", tmp_path / "pooled.csv"
    base = ["sweep", "--gcm", str(DATA / "rank3.json"), "--max-length", "6"]
    assert runner.invoke(main, base + ["--out", str(serial)]).exit_code == 0
    assert (
        runner.invoke(
            main, base + ["--out", str(pooled), "--workers", "2"]
        ).exit_code
        == 0
    )
    assert serial.read_bytes() == pooled.read_bytes()


def test_sweep_json_format(runner, tmp_path):
    out = tmp_path / "s.jsonl"
    res = runner.invoke(
        main,
        ["sweep", "--gcm", str(DATA / "a2.json"), "--max-length", "3",
         "--out", str(out), "--format", "json"],
    )
    assert res.exit_code == 0
    records = [json.loads(l) for l in out.read_text().strip().split("\n")]
    assert len(records) == 6
    assert all(r["schema"] == 1 for r in records)
    longest = [r for r in records if r["length"] == 3]
    assert longest[0]["degree"] == 2


def test_verify_command_exit_zero(runner, tmp_path):
    out = tmp_path / "rep.json"
    res = runner.invoke(
        main,
        ["verify", "--gcm", str(DATA / "a1tilde.json"), "--suite",
         "pairs-lemmas", "--max-height", "4", "--max-length", "8",
         "--out", str(out)],
    )
    assert res.exit_code == 0
    rep = json.loads(out.read_text())
    assert rep["check"] == "pairs-lemmas"
    assert rep["counterexample"] is None


def test_verify_affine_bound_needs_affine(runner):
    res = runner.invoke(
        main,
        ["verify", "--gcm", str(DATA / "a2.json"), "--suite", "affine-bound"],
    )
    assert res.exit_code == 2


def test_kbound_command(runner):
    res = runner.invoke(
        main,
        ["kbound", "--gcm", str(DATA / "a2.json"), "--max-height", "2"],
    )
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert payload["value"] == -1


def test_kbound_uses_cache(runner, tmp_path):
    cache = tmp_path / "cache"
    args = ["kbound", "--gcm", str(DATA / "g2.json"), "--max-height", "5",
            "--cache-dir", str(cache)]
    first = runner.invoke(main, args)
    assert first.exit_code == 0
    assert any(cache.iterdir())
    second = runner.invoke(main, args)
    assert second.output == first.output


def test_config_file_merging(runner, tmp_path):
    cfg = tmp_path / "kmlab.toml"
    cfg.write_text(
        f'gcm = "{DATA / "a1tilde.json"}"\nmax_length = 4\n'
    )
    res = runner.invoke(main, ["sweep", "--config", str(cfg)])
    assert res.exit_code == 0
    assert "9 records" in res.output
    # explicit flag wins over the config value
    res = runner.invoke(
        main, ["sweep", "--config", str(cfg), "--max-length", "2"]
    )
    assert res.exit_code == 0
    assert "5 records" in res.output


def test_missing_gcm_is_usage_error(runner):
    res = runner.invoke(main, ["sweep", "--max-length", "3"])
    assert res.exit_code == 2


def test_env_var_cache(runner, tmp_path, monkeypatch):
    cache = tmp_path / "envcache"
    monkeypatch.setenv("KMLAB_CACHE", str(cache))
    out = tmp_path / "s.csv"
    res = runner.invoke(
        main,
        ["sweep", "--gcm", str(DATA / "a2.json"), "--max-length", "3",
         "--out", str(out)],
    )
    assert res.exit_code == 0
    assert any(cache.iterdir())


def test_verify_undecided_budget_exit_three(runner):
    res = runner.invoke(
        main,
        ["verify", "--gcm", str(DATA / "a2tilde.json"), "--suite",
         "prenilp4", "--max-height", "3", "--max-steps", "0"],
    )
    assert res.exit_code == 3
