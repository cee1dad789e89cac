"""Live simulation host: a coordinator stepped in real time on a thread.

All simulation mutation happens on the sim thread at step boundaries.
Clients interact through two thread-safe surfaces: a command queue
(velocity commands and pause/resume/reset) drained between steps, and
published snapshots (plain immutable dicts) fanned out to listeners.
"""

from __future__ import annotations

import json
import math
import queue
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from botlink.coordinator import Coordinator, RunReport
from botlink.radio import world as radio_world
from botlink.scenarios.config import Scenario
from botlink.scenarios.runners import build_scenario
from botlink.scenarios.traces import TraceSink
from botlink.service.models import CommandFrame, ControlFrame
from botlink.timebase import ns_from_s

SNAPSHOT_HZ = 10.0
COMMAND_SIZE_BYTES = 64


@dataclass(frozen=True)
class Accepted:
    pass


@dataclass(frozen=True)
class Rejected:
    reason: str


SnapshotListener = Callable[[dict], None]


class LiveSim:
    """Owns the coordinator thread for the serving gateway.

    The scenario's real_time_factor is overridden to 1.0: live control is
    pinned to the wall clock.  time_scale is honored, so a dilated run
    plays back in slow motion.
    """

    def __init__(self, scenario: Scenario, out_dir: str | Path | None = None) -> None:
        live = scenario.model_copy(deep=True)
        live.sync.real_time_factor = 1.0
        self.scenario = live
        built = build_scenario(live)
        self._sink = None
        if out_dir is not None:
            Path(out_dir).mkdir(parents=True, exist_ok=True)
            self._sink = TraceSink(out_dir, live.trace.kinds)
        self._out_dir = Path(out_dir) if out_dir is not None else None
        self.coord = Coordinator(
            built.physics,
            built.net,
            built.sync,
            apps=built.apps,
            trace=self._sink,
            sample_interval_ns=built.sample_interval_ns,
            pace_realtime=True,
        )
        self.operator = live.wired_hosts[0].id if live.wired_hosts else None
        self._snapshot_interval_ns = ns_from_s(1.0 / SNAPSHOT_HZ)
        self._next_snapshot_ns = 0
        self._inbox: queue.Queue[CommandFrame | ControlFrame] = queue.Queue()
        self._listeners: list[SnapshotListener] = []
        self._listener_lock = threading.Lock()
        self._latest: dict | None = None
        self._paused = False
        self._wake = threading.Event()
        self._stop = threading.Event()
        self._thread = threading.Thread(target=self._loop, name="botlink-live", daemon=True)
        self._initial = self._capture_initial()
        self.final_report: RunReport | None = None

    # -- lifecycle ----------------------------------------------------------

    def start(self) -> None:
        self._thread.start()

    def stop(self) -> None:
        self._stop.set()
        self._wake.set()
        self._thread.join(timeout=5.0)
        self.final_report = self.coord.report()
        if self._sink is not None:
            self._sink.close()
        if self._out_dir is not None:
            (self._out_dir / "report.json").write_text(
                json.dumps(self.final_report.__dict__, indent=2) + "\n"
            )

    @property
    def stepping(self) -> bool:
        return self._thread.is_alive() and not self._paused and not self._stop.is_set()

    # -- client surface ------------------------------------------------------

    def inject_command(self, frame: CommandFrame) -> Accepted | Rejected:
        """Queue a velocity command for injection through the simulated
        network at the next step boundary."""
        if frame.robot not in self.coord.physics.robots:
            return Rejected("unknown robot")
        if not (math.isfinite(frame.v) and math.isfinite(frame.w)):
            return Rejected("non-finite")
        if self.operator is None:
            return Rejected("no operator host")
        self._inbox.put(frame)
        return Accepted()

    def control(self, frame: ControlFrame) -> Accepted:
        self._inbox.put(frame)
        self._wake.set()
        return Accepted()

    def snapshot(self) -> dict | None:
        return self._latest

    def add_listener(self, listener: SnapshotListener) -> None:
        with self._listener_lock:
            self._listeners.append(listener)

    def remove_listener(self, listener: SnapshotListener) -> None:
        with self._listener_lock:
            if listener in self._listeners:
                self._listeners.remove(listener)

    # -- sim thread ----------------------------------------------------------

    def _capture_initial(self) -> dict:
        robots = {
            rid: (robot.state, list(robot.waypoints))
            for rid, robot in self.coord.physics.robots.items()
        }
        plants = {pid: plant.state for pid, plant in self.coord.physics.plants.items()}
        assoc = dict(self.coord.net.associations)
        positions = {nid: (n.x, n.y) for nid, n in self.coord.net.nodes.items()}
        return {"robots": robots, "plants": plants, "assoc": assoc, "positions": positions}

    def _reset_state(self) -> None:
        """Restore initial object state.  The clock, counters, and RNG keep
        going: snapshots stay monotonic in t and determinism of the past is
        not rewritten."""
        for rid, (state, waypoints) in self._initial["robots"].items():
            robot = self.coord.physics.robots[rid]
            robot.state = state
            robot.waypoints = list(waypoints)
            robot.cmd_v = 0.0
            robot.cmd_w = 0.0
            robot.cmd_stamp_ns = None
        for pid, state in self._initial["plants"].items():
            plant = self.coord.physics.plants[pid]
            plant.state = state
            plant.force = 0.0
        for nid, (x, y) in self._initial["positions"].items():
            node = self.coord.net.nodes[nid]
            node.x = x
            node.y = y
        self.coord.net.associations.update(self._initial["assoc"])
        self.coord.net.transitions.clear()

    def _apply_frame(self, frame: CommandFrame | ControlFrame) -> None:
        if isinstance(frame, ControlFrame):
            if frame.type == "pause":
                self._paused = True
            elif frame.type == "resume":
                if self._paused:
                    self._paused = False
                    self.coord.rebase_pacing()
            elif frame.type == "reset":
                self._reset_state()
            return
        if self.operator is None:
            return
        self.coord.send_packet(
            self.operator,
            frame.robot,
            COMMAND_SIZE_BYTES,
            payload=("cmd_vel", frame.robot, frame.v, frame.w),
        )

    def _publish(self) -> None:
        net = self.coord.net
        robots = []
        for rid, robot in self.coord.physics.robots.items():
            pose = robot.state.pose
            is_station = rid in net.associations
            robots.append(
                {
                    "id": rid,
                    "x": pose.x,
                    "y": pose.y,
                    "theta": pose.theta,
                    "rssi": net.reported_rssi(rid) if is_station else radio_world.RSSI_NONE,
                    "ap": net.current_ap(rid) if is_station else None,
                }
            )
        aps = [{"id": ap.node_id, "x": ap.x, "y": ap.y} for ap in net.access_points()]
        snap = {
            "t_ns": self.coord.now_ns,
            "robots": robots,
            "aps": aps,
            "counters": self.coord.counters(),
        }
        self._latest = snap
        with self._listener_lock:
            listeners = list(self._listeners)
        for listener in listeners:
            listener(snap)

    def _loop(self) -> None:
        step_ns = self.coord.cfg.physics_step_ns
        self._publish()
        self._next_snapshot_ns = self._snapshot_interval_ns
        while not self._stop.is_set():
            while True:
                try:
                    frame = self._inbox.get_nowait()
                except queue.Empty:
                    break
                self._apply_frame(frame)
            if self._paused:
                self._wake.wait(timeout=0.05)
                self._wake.clear()
                continue
            self.coord.run(self.coord.now_ns + step_ns)
            if self.coord.now_ns >= self._next_snapshot_ns:
                self._publish()
                self._next_snapshot_ns = self.coord.now_ns + self._snapshot_interval_ns
