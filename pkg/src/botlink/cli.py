"""Command-line front end.

Batch experiments run in-process; `serve` hands off to the FastAPI
gateway.  Exit codes: 0 success, 2 scenario/usage problems, 1 runtime
failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from botlink import errors
from botlink.scenarios.bench import run_bench, write_bench_report
from botlink.scenarios.config import Scenario, load_builtin, load_scenario
from botlink.scenarios.runners import (
    run_loss_grid,
    run_rssi_sweep,
    run_scenario,
    run_sync_validation,
)

BUILTIN_DRIVE_BY = "drive_by.json"
BUILTIN_HANDOVER = "handover.json"
BUILTIN_PENDULUM = "pendulum.json"
BUILTIN_SYNC = "sync_validation.json"
BUILTIN_TELEOP = "teleop.json"


def _load(path: str | None, default_builtin: str) -> Scenario:
    if path is None:
        return load_builtin(default_builtin)
    return load_scenario(path)


def _cmd_run(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    if args.seed is not None:
        scenario = scenario.model_copy(deep=True, update={"seed": args.seed})
    report = run_scenario(scenario, args.out)
    print(json.dumps(report.__dict__))
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    report = run_bench(args.robots, args.duration, seed=args.seed)
    if args.out:
        write_bench_report(report, args.out)
    print(json.dumps(dataclasses.asdict(report)))
    return 0


def _cmd_case1(args: argparse.Namespace) -> int:
    out = Path(args.out)
    if args.scenario is not None:
        scenario = load_scenario(args.scenario)
        if scenario.propagation.model == "free_space":
            summary = run_rssi_sweep(scenario, out)
        else:
            summary = {"report": run_scenario(scenario, out).__dict__}
        print(json.dumps(summary, default=str))
        return 0
    sweep = run_rssi_sweep(load_builtin(BUILTIN_DRIVE_BY), out / "drive_by")
    handover = run_scenario(load_builtin(BUILTIN_HANDOVER), out / "handover")
    print(json.dumps({"drive_by": sweep, "handover": handover.__dict__}, default=str))
    return 0


def _cmd_case2(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario, BUILTIN_PENDULUM)
    summary = run_loss_grid(scenario, args.out)
    print(json.dumps(summary["by_loss"]))
    return 0


def _cmd_sync_validate(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario, BUILTIN_SYNC)
    summary = run_sync_validation(scenario, args.out)
    brief = {
        mode: {"packets": m["packets"], "mean_delay_s": m["mean_delay_s"]}
        for mode, m in summary["modes"].items()
    }
    print(json.dumps(brief))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from botlink.service.app import create_app

    scenario = _load(args.scenario, BUILTIN_TELEOP)
    app = create_app(scenario, out_dir=args.out, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="botlink")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario file")
    p_run.add_argument("scenario")
    p_run.add_argument("--out", default="out/run")
    p_run.add_argument("--seed", type=int, default=None)
    p_run.set_defaults(fn=_cmd_run)

    p_bench = sub.add_parser("bench", help="scaling benchmark (one cell per process)")
    p_bench.add_argument("--robots", type=int, required=True)
    p_bench.add_argument("--duration", type=float, required=True)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out", default=None)
    p_bench.set_defaults(fn=_cmd_bench)

    p_case1 = sub.add_parser(
        "case1", help="drive-by RSSI sweep and handover preset"
    )
    p_case1.add_argument("scenario", nargs="?", default=None)
    p_case1.add_argument("--out", default="out/case1")
    p_case1.set_defaults(fn=_cmd_case1)

    p_case2 = sub.add_parser("case2", help="networked pendulum loss-grid preset")
    p_case2.add_argument("scenario", nargs="?", default=None)
    p_case2.add_argument("--out", default="out/case2")
    p_case2.set_defaults(fn=_cmd_case2)

    p_sync = sub.add_parser("sync-validate", help="coupling-mode delay comparison")
    p_sync.add_argument("scenario", nargs="?", default=None)
    p_sync.add_argument("--out", default="out/sync")
    p_sync.set_defaults(fn=_cmd_sync_validate)

    p_serve = sub.add_parser("serve", help="live gateway with teleoperation socket")
    p_serve.add_argument("scenario", nargs="?", default=None)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--out", default="out/serve")
    p_serve.add_argument("--ui-dir", default=None)
    p_serve.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (errors.ParseError, errors.ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except errors.BotlinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
