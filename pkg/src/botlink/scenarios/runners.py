"""Build worlds from a scenario and drive the canned experiments."""

from __future__ import annotations

import csv
import json
import statistics
from dataclasses import dataclass
from pathlib import Path

from botlink.coordinator import Coordinator, RunReport, SimApp, SyncConfig, SyncMode
from botlink.physics.cartpole import CartPoleParams, CartPoleState
from botlink.physics.robots import DiffDriveParams, Pose2D, RobotState
from botlink.physics.world import PhysicsWorld, Plant, Robot
from botlink.radio.channel import CongestionWindow, LinkParams, LossProfile
from botlink.radio.nodes import NetNode, NodeKind, RadioParams
from botlink.radio.propagation import FreeSpace, LogDistance
from botlink.radio.world import AssociationConfig, NetWorld
from botlink.scenarios import config as cfg
from botlink.scenarios.apps import (
    ControlLoopApp,
    ConvergenceWatch,
    DelayRecorderApp,
    TeleopApp,
    TrafficApp,
)
from botlink.physics.pid import PidController
from botlink.scenarios.config import Scenario, dump_resolved, load_scenario
from botlink.scenarios.traces import TraceSink
from botlink.timebase import ns_from_s, s_from_ns


@dataclass
class Built:
    """Everything needed to run one scenario."""

    physics: PhysicsWorld
    net: NetWorld
    sync: SyncConfig
    apps: tuple[SimApp, ...]
    sample_interval_ns: int
    duration_ns: int
    scenario: Scenario


def _radio(section: cfg.RadioSection) -> RadioParams:
    return RadioParams(
        tx_power_dbm=section.tx_power_dbm,
        antenna_gain_db=section.antenna_gain_db,
        sensitivity_dbm=section.sensitivity_dbm,
    )


def _propagation(section: cfg.FreeSpaceSection | cfg.LogDistanceSection):
    if isinstance(section, cfg.FreeSpaceSection):
        return FreeSpace(frequency_hz=section.frequency_hz, system_loss_db=section.system_loss_db)
    return LogDistance(
        exponent=section.exponent,
        ref_loss_db=section.ref_loss_db,
        ref_distance_m=section.ref_distance_m,
    )


def build_scenario(scenario: Scenario, extra_apps: tuple[SimApp, ...] = ()) -> Built:
    """Instantiate worlds, apps, and sync config from a parsed scenario.

    Stations are settled into their initial associations at t=0 so every
    in-range node starts connected instead of waiting out a scan.
    """
    physics = PhysicsWorld()
    link = LinkParams(
        bitrate_bps=scenario.link.bitrate_bps,
        fixed_latency_ns=ns_from_s(scenario.link.fixed_latency_s),
        loss=LossProfile(
            base_loss=scenario.link.loss.base_loss,
            jitter_ns=ns_from_s(scenario.link.loss.jitter_s),
            congestion=tuple(
                CongestionWindow(
                    start_ns=ns_from_s(w.start_s),
                    end_ns=ns_from_s(w.end_s),
                    extra_loss=w.extra_loss,
                )
                for w in scenario.link.loss.congestion
            ),
        ),
    )
    assoc = AssociationConfig(
        threshold_dbm=scenario.association.threshold_dbm,
        hysteresis_db=scenario.association.hysteresis_db,
        handover_gap_ns=ns_from_s(scenario.association.handover_gap_s),
        scan_interval_ns=ns_from_s(scenario.association.scan_interval_s),
        scan_epsilon_m=scenario.association.scan_epsilon_m,
    )
    net = NetWorld(
        model=_propagation(scenario.propagation),
        link=link,
        assoc=assoc,
        seed=scenario.seed,
    )

    for ap in scenario.access_points:
        net.add_node(
            NetNode(ap.id, NodeKind.ACCESS_POINT, x=ap.x, y=ap.y, radio=_radio(ap.radio))
        )
    for host in scenario.wired_hosts:
        anchor = net.node(host.attached_ap)
        net.add_node(
            NetNode(
                host.id,
                NodeKind.WIRED_HOST,
                x=anchor.x,
                y=anchor.y,
                attached_ap=host.attached_ap,
            )
        )

    for robot_cfg in scenario.robots:
        physics.add_robot(
            Robot(
                robot_id=robot_cfg.id,
                state=RobotState(pose=Pose2D(robot_cfg.x, robot_cfg.y, robot_cfg.theta)),
                params=DiffDriveParams(
                    v_max=robot_cfg.v_max,
                    w_max=robot_cfg.w_max,
                    accel_limit=robot_cfg.accel_limit,
                ),
                waypoints=[tuple(wp) for wp in robot_cfg.waypoints],
            )
        )
        net.add_node(
            NetNode(
                robot_cfg.id,
                NodeKind.STATION,
                x=robot_cfg.x,
                y=robot_cfg.y,
                radio=_radio(robot_cfg.radio),
            )
        )

    apps: list[SimApp] = [TeleopApp()]
    for plant_cfg in scenario.plants:
        physics.add_plant(
            Plant(
                plant_id=plant_cfg.id,
                state=CartPoleState(
                    x=plant_cfg.cart.x0,
                    x_dot=plant_cfg.cart.x_dot0,
                    theta=plant_cfg.cart.theta0,
                    theta_dot=plant_cfg.cart.theta_dot0,
                ),
                params=CartPoleParams(
                    cart_mass=plant_cfg.cart.cart_mass,
                    pole_mass=plant_cfg.cart.pole_mass,
                    pole_half_length=plant_cfg.cart.pole_half_length,
                    gravity=plant_cfg.cart.gravity,
                ),
                position=(plant_cfg.x, plant_cfg.y),
            )
        )
        net.add_node(
            NetNode(
                plant_cfg.id,
                NodeKind.STATION,
                x=plant_cfg.x,
                y=plant_cfg.y,
                radio=_radio(plant_cfg.radio),
            )
        )
        ctl = plant_cfg.controller
        if ctl is not None:
            apps.append(
                ControlLoopApp(
                    plant_id=plant_cfg.id,
                    host=ctl.host,
                    pid=PidController(
                        kp=ctl.kp,
                        ki=ctl.ki,
                        kd=ctl.kd,
                        output_limit=ctl.output_limit,
                        integral_limit=ctl.integral_limit,
                    ),
                    setpoint=ctl.setpoint,
                    sensor_interval_ns=ns_from_s(1.0 / ctl.sensor_rate_hz),
                    sensor_size_bytes=ctl.sensor_size_bytes,
                    force_size_bytes=ctl.force_size_bytes,
                )
            )

    duration_ns = ns_from_s(scenario.duration_s)
    for flow in scenario.traffic:
        end_ns = duration_ns if flow.end_s is None else ns_from_s(flow.end_s)
        apps.append(
            TrafficApp(
                src=flow.src,
                dst=flow.dst,
                size_bytes=flow.size_bytes,
                interval_ns=ns_from_s(1.0 / flow.rate_hz),
                start_ns=ns_from_s(flow.start_s),
                end_ns=end_ns,
            )
        )

    apps.extend(extra_apps)
    net.settle(0)

    sync = SyncConfig(
        mode=SyncMode(scenario.sync.mode),
        physics_step_ns=ns_from_s(scenario.sync.physics_step_s),
        real_time_factor=scenario.sync.real_time_factor,
        time_scale=scenario.sync.time_scale,
    )
    return Built(
        physics=physics,
        net=net,
        sync=sync,
        apps=tuple(apps),
        sample_interval_ns=ns_from_s(scenario.trace.sample_interval_s),
        duration_ns=duration_ns,
        scenario=scenario,
    )


def run_scenario(
    scenario: Scenario | str | Path,
    out_dir: str | Path,
    extra_apps: tuple[SimApp, ...] = (),
) -> RunReport:
    """Run one scenario, writing traces, resolved config, and a report."""
    if not isinstance(scenario, Scenario):
        scenario = load_scenario(scenario)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    built = build_scenario(scenario, extra_apps)
    dump_resolved(scenario, out / "resolved.json")
    with TraceSink(out, built.scenario.trace.kinds) as sink:
        coord = Coordinator(
            built.physics,
            built.net,
            built.sync,
            apps=built.apps,
            trace=sink,
            sample_interval_ns=built.sample_interval_ns,
        )
        report = coord.run(built.duration_ns)
    (out / "report.json").write_text(json.dumps(report.__dict__, indent=2) + "\n")
    return report


# -- canned experiments ----------------------------------------------------


def run_sync_validation(scenario: Scenario | str | Path, out_dir: str | Path) -> dict:
    """Same traffic through both coupling modes; report observed delays.

    The scenario is expected to contain one traffic flow whose dst is the
    measurement point.  Each mode gets a scatter.csv of network delay vs
    observed simulation delay, one row per delivered packet.
    """
    if not isinstance(scenario, Scenario):
        scenario = load_scenario(scenario)
    if not scenario.traffic:
        raise ValueError("sync validation scenario needs a traffic flow")
    out = Path(out_dir)
    summary: dict = {"real_time_factor": scenario.sync.real_time_factor, "modes": {}}
    for mode in ("synchronized", "unsynchronized"):
        leg = scenario.model_copy(deep=True)
        leg.sync.mode = mode
        recorder = DelayRecorderApp(dst=scenario.traffic[0].dst)
        run_scenario(leg, out / mode, extra_apps=(recorder,))
        with open(out / mode / "scatter.csv", "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(("packet_id", "net_delay_ns", "observed_delay_ns"))
            for packet_id, net, observed in recorder.pairs_ns:
                writer.writerow((packet_id, net, observed))
        delays_s = [s_from_ns(d) for d in recorder.delays_ns]
        summary["modes"][mode] = {
            "packets": len(recorder.delays_ns),
            "pairs_ns": [list(p) for p in recorder.pairs_ns],
            "mean_delay_s": statistics.fmean(delays_s) if delays_s else None,
        }
    (out / "sync_validation.json").write_text(json.dumps(summary, indent=2) + "\n")
    return summary


def run_rssi_sweep(
    scenario: Scenario | str | Path,
    out_dir: str | Path,
    system_loss_grid: tuple[float, ...] = (0.0, 3.0, 6.0),
) -> dict:
    """Drive-by RSSI experiment swept over the system-loss term."""
    if not isinstance(scenario, Scenario):
        scenario = load_scenario(scenario)
    if not isinstance(scenario.propagation, cfg.FreeSpaceSection):
        raise ValueError("the system-loss sweep applies to the free_space model")
    out = Path(out_dir)
    summary: dict = {"system_loss_grid": list(system_loss_grid), "runs": []}
    for sl in system_loss_grid:
        leg = scenario.model_copy(deep=True)
        leg.propagation.system_loss_db = sl
        sub = out / f"sl{format(sl, 'g')}"
        report = run_scenario(leg, sub)
        summary["runs"].append(
            {"system_loss_db": sl, "out": sub.name, "packets_sent": report.packets_sent}
        )
    (out / "rssi_sweep.json").write_text(json.dumps(summary, indent=2) + "\n")
    return summary


def run_loss_grid(
    scenario: Scenario | str | Path,
    out_dir: str | Path,
    loss_grid: tuple[float, ...] = (0.0, 0.1, 0.2, 0.3),
    seeds: tuple[int, ...] = tuple(range(10)),
    band: float = 0.01,
    sustain_s: float = 2.0,
) -> dict:
    """Networked pendulum control swept over packet loss and seeds."""
    if not isinstance(scenario, Scenario):
        scenario = load_scenario(scenario)
    if not scenario.plants or scenario.plants[0].controller is None:
        raise ValueError("loss grid scenario needs a controlled plant")
    plant_id = scenario.plants[0].id
    setpoint = scenario.plants[0].controller.setpoint
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    runs = []
    for p in loss_grid:
        for seed in seeds:
            leg = scenario.model_copy(deep=True)
            leg.link.loss.base_loss = p
            leg.seed = seed
            watch = ConvergenceWatch(
                plant_id=plant_id,
                band=band,
                sustain_ns=ns_from_s(sustain_s),
                setpoint=setpoint,
            )
            built = build_scenario(leg, extra_apps=(watch,))
            coord = Coordinator(
                built.physics,
                built.net,
                built.sync,
                apps=built.apps,
                sample_interval_ns=built.sample_interval_ns,
            )
            report = coord.run(built.duration_ns)
            runs.append(
                {
                    "loss": p,
                    "seed": seed,
                    "t_converge_s": None
                    if watch.t_converge_ns is None
                    else s_from_ns(watch.t_converge_ns),
                    "delivered": report.delivered,
                    "dropped": report.dropped,
                }
            )
    by_loss = []
    for p in loss_grid:
        ts = [r["t_converge_s"] for r in runs if r["loss"] == p]
        converged = [t for t in ts if t is not None]
        by_loss.append(
            {
                "loss": p,
                "converged": len(converged),
                "total": len(ts),
                "mean_t_converge_s": statistics.fmean(converged) if converged else None,
            }
        )
    summary = {"band": band, "sustain_s": sustain_s, "runs": runs, "by_loss": by_loss}
    (out / "loss_grid.json").write_text(json.dumps(summary, indent=2) + "\n")
    return summary
