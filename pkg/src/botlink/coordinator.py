"""Lockstep coordinator joining the physics and network worlds.

The coordinator owns the event queue and the simulation clock.  Physics
advances on a fixed step; network deliveries are discrete events at their
own timestamps.  After every physics step the robot positions are mirrored
into the network world (which may trigger association scans), so signal
strength always reflects current geometry.

Two coupling modes exist.  Synchronized: a packet arrives as an event at
sent + transit, and the delivery gate confirms the deadline in simulation
time, so observed delays equal the network's computed transit exactly no
matter how slowly either side runs on the wall clock.  Unsynchronized:
delivery is a wall-clock handoff.  The physics half paces itself at
real_time_factor (and time_scale dilates everything further), while the
network partner keeps up with the wall clock, so a transit of D wall
seconds lands after only real_time_factor * D / time_scale of simulated
time.  That handoff is emulated deterministically in simulation time,
which keeps traces byte-identical while reproducing the timing error
unsynchronized coupling causes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

from botlink.errors import BotlinkError, SimulationAborted
from botlink.events import EventKind, EventQueue
from botlink.gate import Discard, Release, gate
from botlink.physics.world import PhysicsWorld
from botlink.radio.channel import Dropped, Scheduled
from botlink.radio.nodes import Packet
from botlink.radio.world import NetWorld
from botlink.timebase import ClockPair, unsync_arrival_ns, virtual_wall_ns

if TYPE_CHECKING:
    from botlink.scenarios.traces import TraceSink


class SyncMode(Enum):
    SYNCHRONIZED = "synchronized"
    UNSYNCHRONIZED = "unsynchronized"


@dataclass(frozen=True)
class SyncConfig:
    mode: SyncMode = SyncMode.SYNCHRONIZED
    physics_step_ns: int = 10_000_000
    real_time_factor: float = 1.0
    time_scale: int = 1

    def __post_init__(self) -> None:
        if self.physics_step_ns <= 0:
            raise ValueError(f"physics_step_ns must be positive, got {self.physics_step_ns}")
        if not (0.0 < self.real_time_factor <= 1.0):
            raise ValueError(
                f"real_time_factor must be in (0, 1], got {self.real_time_factor}"
            )
        if self.time_scale < 1:
            raise ValueError(f"time_scale must be >= 1, got {self.time_scale}")


@dataclass(frozen=True)
class RunReport:
    """Outcome counters.  Contains simulation quantities only, never wall
    time, so identical runs compare equal."""

    steps: int
    packets_sent: int
    delivered: int
    discarded: int
    dropped: int
    final_sim_ns: int


class SimApp:
    """Application hook driven by the coordinator.

    Subclasses override what they need: on_start runs once before the
    first step, on_step runs at every physics step boundary before the
    state advances, on_delivery runs when a packet addressed to anyone
    arrives (filter by packet.dst).
    """

    def on_start(self, coord: "Coordinator") -> None:
        pass

    def on_step(self, coord: "Coordinator", now_ns: int) -> None:
        pass

    def on_delivery(self, coord: "Coordinator", packet: Packet, now_ns: int) -> None:
        pass


class Coordinator:
    def __init__(
        self,
        physics: PhysicsWorld,
        net: NetWorld,
        cfg: SyncConfig,
        apps: tuple[SimApp, ...] = (),
        trace: "TraceSink | None" = None,
        sample_interval_ns: int | None = None,
        pace_realtime: bool = False,
    ) -> None:
        self.physics = physics
        self.net = net
        self.cfg = cfg
        self.apps = tuple(apps)
        self.trace = trace
        self.sample_interval_ns = sample_interval_ns
        self.queue = EventQueue()
        self._now = 0
        self._started = False
        self._next_sample_ns = 0
        self._wall_start_ns: int | None = None
        # Pacing is implied whenever virtual wall time runs slower than
        # simulation time; live serving forces it even at full speed.
        self._pace = pace_realtime or cfg.real_time_factor < 1.0 or cfg.time_scale > 1
        self.steps = 0
        self.packets_sent = 0
        self.delivered = 0
        self.discarded = 0
        self.dropped = 0
        # Transit the network computed for the packet currently being
        # delivered; lets delivery hooks compare intended vs observed delay.
        self.last_transit_ns: int | None = None

    # -- clock ------------------------------------------------------------

    @property
    def now_ns(self) -> int:
        return self._now

    def clock(self) -> ClockPair:
        return ClockPair(
            sim_ns=self._now,
            wall_ns=virtual_wall_ns(self._now, self.cfg.real_time_factor, self.cfg.time_scale),
        )

    def counters(self) -> dict[str, int]:
        return {
            "steps": self.steps,
            "packets_sent": self.packets_sent,
            "delivered": self.delivered,
            "discarded": self.discarded,
            "dropped": self.dropped,
        }

    def report(self) -> RunReport:
        return RunReport(
            steps=self.steps,
            packets_sent=self.packets_sent,
            delivered=self.delivered,
            discarded=self.discarded,
            dropped=self.dropped,
            final_sim_ns=self._now,
        )

    # -- datapath ---------------------------------------------------------

    def send_packet(
        self, src: str, dst: str, size_bytes: int, payload: object = None
    ) -> Packet:
        """Submit a packet at the current simulation time."""
        packet = self.net.make_packet(src, dst, size_bytes, self._now, payload)
        self.packets_sent += 1
        result = self.net.send(packet)
        if isinstance(result, Dropped):
            self.dropped += 1
            self._trace_packet(self._now, packet, "dropped", None, result.reason)
            return packet

        assert isinstance(result, Scheduled)
        transit_ns = result.arrival_ns - packet.sent_ns
        if self.cfg.mode is SyncMode.SYNCHRONIZED:
            at_ns = result.arrival_ns
        else:
            at_ns = unsync_arrival_ns(
                packet.sent_ns, transit_ns, self.cfg.real_time_factor, self.cfg.time_scale
            )
        self.queue.schedule(
            at_ns,
            EventKind.PACKET_ARRIVAL,
            payload=(packet, result.arrival_ns),
            tag=packet.dst,
        )
        return packet

    def _deliver(self, packet: Packet, now_ns: int) -> None:
        self.delivered += 1
        self._trace_packet(now_ns, packet, "delivered", now_ns - packet.sent_ns, "")
        for app in self.apps:
            app.on_delivery(self, packet, now_ns)

    def _on_arrival(self, packet: Packet, deadline_ns: int) -> None:
        self.last_transit_ns = deadline_ns - packet.sent_ns
        if self.cfg.mode is SyncMode.SYNCHRONIZED:
            decision = gate(packet.sent_ns, deadline_ns - packet.sent_ns, self._now)
            if isinstance(decision, Discard):
                self.discarded += 1
                self._trace_packet(self._now, packet, "discarded", None, decision.reason)
                return
            assert isinstance(decision, Release)
        self._deliver(packet, self._now)

    # -- tracing ----------------------------------------------------------

    def _trace_packet(
        self,
        at_ns: int,
        packet: Packet,
        status: str,
        observed_delay_ns: int | None,
        reason: str,
    ) -> None:
        if self.trace is None:
            return
        self.trace.emit(
            "packet",
            at_ns,
            packet.src,
            {
                "packet_id": packet.packet_id,
                "dst": packet.dst,
                "size_bytes": packet.size_bytes,
                "status": status,
                "sent_ns": packet.sent_ns,
                "observed_delay_ns": "" if observed_delay_ns is None else observed_delay_ns,
                "reason": reason,
            },
        )

    def _drain_assoc(self) -> None:
        if self.trace is None:
            self.net.transitions.clear()
            return
        for tr in self.net.drain_transitions():
            self.trace.emit(
                "assoc",
                tr.at_ns,
                tr.station,
                {
                    "from_state": tr.from_state,
                    "to_state": tr.to_state,
                    "from_ap": tr.from_ap,
                    "to_ap": tr.to_ap,
                    "reason": tr.reason,
                    "x": tr.x,
                },
            )

    def _sample(self, now_ns: int) -> None:
        if self.trace is None:
            return
        for robot in self.physics.robots.values():
            st = robot.state
            self.trace.emit(
                "pose",
                now_ns,
                robot.robot_id,
                {"x": st.pose.x, "y": st.pose.y, "theta": st.pose.theta, "v": st.v, "w": st.w},
            )
        for station_id in sorted(self.net.associations):
            node = self.net.node(station_id)
            ap = self.net.current_ap(station_id)
            self.trace.emit(
                "rssi",
                now_ns,
                station_id,
                {
                    "rssi_dbm": self.net.reported_rssi(station_id),
                    "ap": ap if ap is not None else "",
                    "x": node.x,
                    "y": node.y,
                },
            )
        for plant in self.physics.plants.values():
            st = plant.state
            self.trace.emit(
                "control",
                now_ns,
                plant.plant_id,
                {
                    "theta": st.theta,
                    "theta_dot": st.theta_dot,
                    "x": st.x,
                    "x_dot": st.x_dot,
                    "force": plant.force,
                },
            )

    # -- main loop --------------------------------------------------------

    def _pace_to(self, sim_ns: int) -> None:
        if not self._pace:
            return
        if self._wall_start_ns is None:
            self.rebase_pacing()
        target = self._wall_start_ns + virtual_wall_ns(
            sim_ns, self.cfg.real_time_factor, self.cfg.time_scale
        )
        lag = target - time.monotonic_ns()
        if lag > 0:
            time.sleep(lag / 1e9)

    def rebase_pacing(self) -> None:
        """Re-anchor pacing at the current wall instant.

        Needed after a pause so a paced run resumes smoothly instead of
        sprinting through the gap.  Has no effect on simulation results.
        """
        self._wall_start_ns = time.monotonic_ns() - virtual_wall_ns(
            self._now, self.cfg.real_time_factor, self.cfg.time_scale
        )

    def _sample_if_due(self, at_ns: int) -> None:
        if self.sample_interval_ns is not None and at_ns >= self._next_sample_ns:
            self._sample(at_ns)
            self._next_sample_ns = at_ns + self.sample_interval_ns

    def _on_physics_step(self, at_ns: int) -> None:
        """Advance state from the previous boundary to at_ns."""
        dt_ns = self.cfg.physics_step_ns
        self.physics.step(at_ns - dt_ns, dt_ns)
        self.steps += 1
        for node_id, (x, y) in self.physics.positions().items():
            if node_id in self.net.nodes:
                self.net.mobility_update(node_id, x, y, at_ns)
        self.net.scan_if_due(at_ns)
        self._drain_assoc()
        self._sample_if_due(at_ns)
        for app in self.apps:
            app.on_step(self, at_ns)
        self.queue.schedule(at_ns + dt_ns, EventKind.PHYSICS_STEP)

    def _start(self) -> None:
        self._started = True
        self._drain_assoc()
        for app in self.apps:
            app.on_start(self)
        self._sample_if_due(0)
        for app in self.apps:
            app.on_step(self, 0)
        self.queue.schedule(self.cfg.physics_step_ns, EventKind.PHYSICS_STEP)

    def run(self, until_ns: int) -> RunReport:
        """Run until simulation time reaches until_ns.

        May be called again with a later until_ns to continue the same
        run.  Raises SimulationAborted carrying the partial report if a
        domain error (bad command, unknown node, scheduling bug) stops
        the run.
        """
        if until_ns < self._now:
            raise ValueError("until_ns is before current simulation time")
        try:
            if not self._started:
                self._start()
            while True:
                at = self.queue.peek_time()
                if at is None or at > until_ns:
                    break
                event = self.queue.pop()
                self._now = event.at_ns
                if event.kind is EventKind.PHYSICS_STEP:
                    self._pace_to(event.at_ns)
                    self._on_physics_step(event.at_ns)
                elif event.kind is EventKind.PACKET_ARRIVAL:
                    packet, deadline_ns = event.payload
                    self._on_arrival(packet, deadline_ns)
                elif event.kind is EventKind.CUSTOM:
                    callback = event.payload
                    callback(self, event.at_ns)
                    self._drain_assoc()
            self._now = until_ns
        except BotlinkError as exc:
            raise SimulationAborted(self.report(), exc) from exc
        if self.trace is not None:
            self.trace.flush()
        return self.report()


def run_lockstep(
    physics: PhysicsWorld,
    net: NetWorld,
    cfg: SyncConfig,
    until_ns: int,
    apps: tuple[SimApp, ...] = (),
    trace: "TraceSink | None" = None,
    sample_interval_ns: int | None = None,
    pace_realtime: bool = False,
) -> RunReport:
    """Build a coordinator, run it to until_ns, return the report."""
    coord = Coordinator(
        physics,
        net,
        cfg,
        apps=apps,
        trace=trace,
        sample_interval_ns=sample_interval_ns,
        pace_realtime=pace_realtime,
    )
    return coord.run(until_ns)
