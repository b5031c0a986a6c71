import json
import subprocess
import sys

import pytest

from fuzzysent import defaults
from fuzzysent.cli import main
from fuzzysent.pipeline import PolarityMap, RunConfig, analyze, load_config, read_polarity_map, write_maps

CLOCK = "2020-01-01T00:00:00+00:00"


def conf(tmp_path, **entries):
    p = tmp_path / "run.conf"
    p.write_text("".join(f"{k} = {v}\n" for k, v in entries.items()), encoding="utf-8")
    return p


def test_analyze_demo_road_is_sn_with_accident_cause(tmp_path, capsys):
    assert main(["analyze", "--out", str(tmp_path), "--fixed-clock", CLOCK, "--city", "Quezon"]) == 0
    m = read_polarity_map(tmp_path / "polarity_map_quezon.json")
    road = {f.name: f for f in m.features}["Road"]
    assert road.term == "SN"
    assert ("Accident", "cause-of-jam") in road.causes
    assert "TrafficIsJammedBy(Road, Accident)" in m.derived_facts
    assert "Quezon" in capsys.readouterr().out


def test_polarity_map_round_trips(tmp_path):
    maps = analyze(RunConfig(), fixed_clock=CLOCK)
    paths = write_maps(maps, tmp_path)
    for m, p in zip(maps, paths):
        assert read_polarity_map(p) == m
        assert PolarityMap.from_dict(json.loads(m.to_json())) == m


def test_zero_relevant_documents_gives_empty_map(tmp_path):
    corpus = tmp_path / "c.jsonl"
    corpus.write_text(json.dumps({"id": "a", "text": "Happy birthday!", "source": "tweet", "city": "Q"}) + "\n")
    cfg = load_config(conf(tmp_path, corpus="c.jsonl"))
    [m] = analyze(cfg, fixed_clock=CLOCK)
    assert m.features == () and m.city_polarity == (None, "undetermined")


def test_missing_ontology_exits_2(tmp_path, capsys):
    code = main(["analyze", "--config", str(conf(tmp_path, ontology="missing.txt")), "--out", str(tmp_path)])
    assert code == 2
    assert "missing.txt" in capsys.readouterr().err


def test_bad_config_key_exits_2(tmp_path):
    assert main(["analyze", "--config", str(conf(tmp_path, colour="blue"))]) == 2


def test_bad_clock_exits_2(tmp_path):
    assert main(["analyze", "--out", str(tmp_path), "--fixed-clock", "yesterday"]) == 2


def test_eval_writes_csv_and_table(tmp_path):
    assert main(["eval", "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "metrics.csv").read_text().splitlines()
    assert lines[0] == "feature,P,R,Ac,FM" and lines[-1].startswith("Average,")
    assert (tmp_path / "metrics.txt").read_text().startswith("feature")


def test_eval_without_gold_exits_2(tmp_path):
    corpus = tmp_path / "c.jsonl"
    corpus.write_text(json.dumps({"id": "a", "text": "Road is busy", "source": "tweet", "city": "Q"}) + "\n")
    assert main(["eval", "--config", str(conf(tmp_path, corpus="c.jsonl")), "--out", str(tmp_path)]) == 2


def test_eval_perfect_fixture(tmp_path):
    recs = [
        {"id": "a", "text": "Road is closed.", "source": "tweet", "city": "Q", "gold_labels": {"Road": "SN"}},
        {"id": "b", "text": "Happy birthday!", "source": "tweet", "city": "Q", "gold_labels": {}},
    ]
    (tmp_path / "c.jsonl").write_text("".join(json.dumps(r) + "\n" for r in recs))
    assert main(["eval", "--config", str(conf(tmp_path, corpus="c.jsonl")), "--out", str(tmp_path)]) == 0
    rows = (tmp_path / "metrics.csv").read_text().splitlines()
    assert rows[1] == "Road,100.00,100.00,1.00,100.00"


def test_replicate_passes(capsys):
    assert main(["replicate"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 4


def test_replicate_ignores_tampered_bank(tmp_path):
    bank = tmp_path / "bank.txt"
    bank.write_text("term SN 0 0.3 0.6 shoulder-left\nterm SP 0.4 0.7 1 shoulder-right\n")
    assert main(["replicate", "--config", str(conf(tmp_path, mf_bank=str(bank)))]) == 0


def test_replicate_fails_when_ip_changes(tmp_path, capsys):
    text = defaults.data_path("replication_rules.txt").read_text().replace("IP 0.25", "IP 0.3")
    (tmp_path / "rr.txt").write_text(text)
    assert main(["replicate", "--config", str(conf(tmp_path, replication_rules="rr.txt"))]) == 1
    out = capsys.readouterr().out
    assert "FAIL  road polarity" in out and "0.1751" in out


def test_module_entry_point(tmp_path):
    result = subprocess.run(
        [sys.executable, "-m", "fuzzysent", "replicate"], capture_output=True, text=True, check=False
    )
    assert result.returncode == 0, result.stderr


@pytest.mark.parametrize("jobs", ["0", "-2"])
def test_jobs_must_be_positive(jobs):
    assert main(["analyze", "--jobs", jobs]) == 2


def test_bundled_config_file_matches_defaults():
    cfg = load_config(defaults.data_path("default.conf"))
    base = RunConfig()
    for key in defaults.BUNDLED:
        assert getattr(cfg, key).resolve() == getattr(base, key).resolve()
