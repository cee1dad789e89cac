"""Scaling benchmark: many robots, fixed sim duration, wall/RSS readout.

Peak RSS is a process-wide high-water mark, so comparisons between robot
counts are only meaningful across fresh processes; the CLI runs one cell
per invocation for exactly that reason.
"""

from __future__ import annotations

import json
import resource
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from botlink.coordinator import Coordinator
from botlink.scenarios.config import Scenario, parse_scenario
from botlink.scenarios.runners import build_scenario


@dataclass(frozen=True)
class BenchReport:
    robots: int
    sim_time_s: float
    wall_time_s: float
    ratio: float  # wall / sim; below 1.0 means faster than real time
    peak_rss_kb: int
    steps: int
    packets_sent: int
    delivered: int
    dropped: int
    discarded: int


def build_bench_scenario(n_robots: int, duration_s: float, seed: int = 0) -> Scenario:
    """Synthetic warehouse floor: four APs, patrolling robots, a sink host.

    Every robot streams telemetry to the sink and receives commands back,
    so the network load grows linearly with the robot count.
    """
    if n_robots < 1:
        raise ValueError("n_robots must be at least 1")
    aps = [
        {"id": "ap0", "x": 0.0, "y": 0.0},
        {"id": "ap1", "x": 100.0, "y": 0.0},
        {"id": "ap2", "x": 0.0, "y": 100.0},
        {"id": "ap3", "x": 100.0, "y": 100.0},
    ]
    robots = []
    traffic = []
    for i in range(n_robots):
        y = 5.0 + (i * 90.0 / max(n_robots - 1, 1))
        robots.append(
            {
                "id": f"r{i}",
                "x": 10.0,
                "y": y,
                "theta": 0.0,
                "waypoints": [[90.0, y], [90.0, 90.0], [10.0, 90.0], [10.0, y]],
            }
        )
        traffic.append(
            {"src": f"r{i}", "dst": "sink", "rate_hz": 20.0, "size_bytes": 256}
        )
        traffic.append(
            {"src": "sink", "dst": f"r{i}", "rate_hz": 10.0, "size_bytes": 64}
        )
    doc = {
        "name": f"bench-{n_robots}",
        "seed": seed,
        "duration_s": duration_s,
        "sync": {"mode": "synchronized", "physics_step_s": 0.01},
        "propagation": {"model": "log_distance", "exponent": 2.4, "ref_loss_db": 40.0},
        "link": {
            "bitrate_bps": 54e6,
            "fixed_latency_s": 0.002,
            "loss": {"base_loss": 0.01, "jitter_s": 0.001},
        },
        "trace": {"kinds": [], "sample_interval_s": 0.1},
        "access_points": aps,
        "wired_hosts": [{"id": "sink", "attached_ap": "ap0"}],
        "robots": robots,
        "traffic": traffic,
    }
    return parse_scenario(doc)


def run_bench(n_robots: int, duration_s: float, seed: int = 0) -> BenchReport:
    scenario = build_bench_scenario(n_robots, duration_s, seed)
    built = build_scenario(scenario)
    coord = Coordinator(built.physics, built.net, built.sync, apps=built.apps)
    start = time.monotonic()
    report = coord.run(built.duration_ns)
    wall = time.monotonic() - start
    peak_rss_kb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    return BenchReport(
        robots=n_robots,
        sim_time_s=duration_s,
        wall_time_s=wall,
        ratio=wall / duration_s,
        peak_rss_kb=peak_rss_kb,
        steps=report.steps,
        packets_sent=report.packets_sent,
        delivered=report.delivered,
        dropped=report.dropped,
        discarded=report.discarded,
    )


def write_bench_report(report: BenchReport, out_dir: str | Path) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"bench_{report.robots}.json"
    path.write_text(json.dumps(asdict(report), indent=2) + "\n")
    return path
