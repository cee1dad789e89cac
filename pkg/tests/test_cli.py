import json

from botlink.cli import main
from botlink.scenarios.traces import read_trace
from tests.conftest import minimal_doc


def write_scenario(tmp_path, doc=None):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(doc or minimal_doc()))
    return path


def test_run_success(tmp_path, capsys):
    path = write_scenario(tmp_path)
    code = main(["run", str(path), "--out", str(tmp_path / "out")])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["steps"] == 100
    assert (tmp_path / "out" / "pose.csv").exists()


def test_run_seed_override(tmp_path):
    doc = minimal_doc()
    doc["seed"] = 3
    path = write_scenario(tmp_path, doc)
    assert main(["run", str(path), "--out", str(tmp_path / "a"), "--seed", "9"]) == 0
    resolved = json.loads((tmp_path / "a" / "resolved.json").read_text())
    assert resolved["seed"] == 9


def test_missing_scenario_exits_2(tmp_path, capsys):
    code = main(["run", str(tmp_path / "nope.json"), "--out", str(tmp_path / "out")])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_invalid_scenario_exits_2(tmp_path, capsys):
    bad = minimal_doc()
    bad["robots"][0]["v_max"] = -1.0
    path = write_scenario(tmp_path, bad)
    assert main(["run", str(path), "--out", str(tmp_path / "out")]) == 2


def test_bench_prints_report(tmp_path, capsys):
    code = main(["bench", "--robots", "2", "--duration", "1", "--out", str(tmp_path)])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["robots"] == 2
    assert report["ratio"] > 0
    assert (tmp_path / "bench_2.json").exists()


def test_sync_validate_brief_output(tmp_path, capsys):
    doc = minimal_doc(
        duration_s=0.5,
        wired_hosts=[{"id": "host", "attached_ap": "ap1"}],
        traffic=[{"src": "r1", "dst": "host", "rate_hz": 10.0, "size_bytes": 0}],
        link={"bitrate_bps": 0.0, "fixed_latency_s": 0.004},
    )
    path = write_scenario(tmp_path, doc)
    code = main(["sync-validate", str(path), "--out", str(tmp_path / "out")])
    assert code == 0
    brief = json.loads(capsys.readouterr().out)
    assert brief["synchronized"]["packets"] == 5
    assert brief["synchronized"]["mean_delay_s"] == 0.004


def test_case1_with_free_space_scenario_runs_sweep(tmp_path, capsys):
    doc = minimal_doc(
        duration_s=1.0,
        propagation={"model": "free_space"},
        trace={"kinds": ["pose", "rssi", "assoc"], "sample_interval_s": 0.1},
    )
    path = write_scenario(tmp_path, doc)
    assert main(["case1", str(path), "--out", str(tmp_path / "out")]) == 0
    for sl in ("sl0", "sl3", "sl6"):
        assert (tmp_path / "out" / sl / "rssi.csv").exists()


def test_case2_unknown_file_exits_2(tmp_path):
    # the full preset grid is 40 runs and covered by the acceptance suite;
    # here only the error path is exercised
    assert main(["case2", str(tmp_path / "ghost.json"), "--out", str(tmp_path)]) == 2


def test_packets_traced_for_commands(tmp_path):
    doc = minimal_doc(
        duration_s=1.0,
        wired_hosts=[{"id": "host", "attached_ap": "ap1"}],
        traffic=[{"src": "host", "dst": "r1", "rate_hz": 5.0, "size_bytes": 64}],
    )
    path = write_scenario(tmp_path, doc)
    assert main(["run", str(path), "--out", str(tmp_path / "out")]) == 0
    rows = read_trace(tmp_path / "out" / "packet.csv")
    assert len(rows) == 5
    assert {r["subject"] for r in rows} == {"host"}
