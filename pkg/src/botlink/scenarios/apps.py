"""Applications that generate and consume traffic during a run.

Apps talk to the coordinator only: they schedule send events at exact
simulation times and react to deliveries.  Payloads are small tuples whose
first element names the message type.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from botlink.coordinator import Coordinator, SimApp
from botlink.events import EventKind
from botlink.physics.pid import PidController, pid_step
from botlink.radio.nodes import Packet


class TrafficApp(SimApp):
    """Constant-rate sender from src to dst over [start_ns, end_ns)."""

    def __init__(
        self,
        src: str,
        dst: str,
        size_bytes: int,
        interval_ns: int,
        start_ns: int,
        end_ns: int,
    ) -> None:
        if interval_ns <= 0:
            raise ValueError("interval_ns must be positive")
        self.src = src
        self.dst = dst
        self.size_bytes = size_bytes
        self.interval_ns = interval_ns
        self.start_ns = start_ns
        self.end_ns = end_ns

    def on_start(self, coord: Coordinator) -> None:
        if self.start_ns < self.end_ns:
            coord.queue.schedule(
                self.start_ns, EventKind.CUSTOM, payload=self._fire, tag=f"traffic:{self.src}"
            )

    def _fire(self, coord: Coordinator, now_ns: int) -> None:
        coord.send_packet(self.src, self.dst, self.size_bytes, payload=("data",))
        next_ns = now_ns + self.interval_ns
        if next_ns < self.end_ns:
            coord.queue.schedule(
                next_ns, EventKind.CUSTOM, payload=self._fire, tag=f"traffic:{self.src}"
            )


class InjectorApp(SimApp):
    """Sends a fixed list of (t_ns, src, dst, size_bytes) packets."""

    def __init__(self, sends: list[tuple[int, str, str, int]]) -> None:
        self.sends = list(sends)

    def on_start(self, coord: Coordinator) -> None:
        for at_ns, src, dst, size_bytes in self.sends:
            coord.queue.schedule(
                at_ns,
                EventKind.CUSTOM,
                payload=lambda c, now, s=src, d=dst, n=size_bytes: c.send_packet(
                    s, d, n, payload=("data",)
                ),
                tag=f"inject:{src}",
            )


class DelayRecorderApp(SimApp):
    """Collects (network delay, observed delay) for packets sent to dst."""

    def __init__(self, dst: str) -> None:
        self.dst = dst
        self.pairs_ns: list[tuple[int, int, int]] = []  # (packet_id, net, observed)

    def on_delivery(self, coord: Coordinator, packet: Packet, now_ns: int) -> None:
        if packet.dst == self.dst:
            net = coord.last_transit_ns if coord.last_transit_ns is not None else 0
            self.pairs_ns.append((packet.packet_id, net, now_ns - packet.sent_ns))

    @property
    def delays_ns(self) -> list[int]:
        return [obs for _, _, obs in self.pairs_ns]


class ControlLoopApp(SimApp):
    """Networked regulator for one cart-pole plant.

    The plant's station samples (theta, ...) at a fixed rate and sends it
    to the controller host.  The controller updates a PID on each sample
    that survives the network and returns a force packet; the plant
    latches whatever force last arrived.  Both directions ride the lossy
    link, so loss shows up as a stale controller view and a stale
    actuator, not as a changed control law.
    """

    def __init__(
        self,
        plant_id: str,
        host: str,
        pid: PidController,
        setpoint: float,
        sensor_interval_ns: int,
        sensor_size_bytes: int = 64,
        force_size_bytes: int = 32,
    ) -> None:
        self.plant_id = plant_id
        self.host = host
        self.pid = pid
        self.setpoint = setpoint
        self.sensor_interval_ns = sensor_interval_ns
        self.sensor_size_bytes = sensor_size_bytes
        self.force_size_bytes = force_size_bytes
        self._dt_s = sensor_interval_ns / 1e9

    def on_start(self, coord: Coordinator) -> None:
        coord.queue.schedule(
            self.sensor_interval_ns,
            EventKind.CUSTOM,
            payload=self._sample,
            tag=f"sensor:{self.plant_id}",
        )

    def _sample(self, coord: Coordinator, now_ns: int) -> None:
        plant = coord.physics.plant(self.plant_id)
        coord.send_packet(
            self.plant_id,
            self.host,
            self.sensor_size_bytes,
            payload=("sensor", self.plant_id, plant.state.theta),
        )
        coord.queue.schedule(
            now_ns + self.sensor_interval_ns,
            EventKind.CUSTOM,
            payload=self._sample,
            tag=f"sensor:{self.plant_id}",
        )

    def on_delivery(self, coord: Coordinator, packet: Packet, now_ns: int) -> None:
        payload = packet.payload
        if not isinstance(payload, tuple) or not payload:
            return
        if packet.dst == self.host and payload[0] == "sensor" and payload[1] == self.plant_id:
            theta = payload[2]
            self.pid, force = pid_step(self.pid, theta - self.setpoint, self._dt_s)
            coord.send_packet(
                self.host,
                self.plant_id,
                self.force_size_bytes,
                payload=("force", self.plant_id, force),
            )
        elif packet.dst == self.plant_id and payload[0] == "force" and payload[1] == self.plant_id:
            coord.physics.set_force(self.plant_id, payload[2])


class TeleopApp(SimApp):
    """Applies velocity-command packets to their target robot."""

    def on_delivery(self, coord: Coordinator, packet: Packet, now_ns: int) -> None:
        payload = packet.payload
        if not isinstance(payload, tuple) or not payload or payload[0] != "cmd_vel":
            return
        _, robot_id, v, w = payload
        if packet.dst == robot_id and robot_id in coord.physics.robots:
            coord.physics.set_command(robot_id, v, w, now_ns)


@dataclass
class ConvergenceWatch(SimApp):
    """Finds when |theta - setpoint| first stays inside a band.

    t_converge_ns is the instant the band was entered for the stretch
    that lasted at least sustain_ns; None if that never happened.
    """

    plant_id: str
    band: float = 0.01
    sustain_ns: int = 2_000_000_000
    setpoint: float = 0.0
    _entered_ns: int | None = field(default=None, repr=False)
    t_converge_ns: int | None = None

    def on_step(self, coord: Coordinator, now_ns: int) -> None:
        if self.t_converge_ns is not None:
            return
        plant = coord.physics.plant(self.plant_id)
        inside = abs(plant.state.theta - self.setpoint) < self.band
        if not inside:
            self._entered_ns = None
            return
        if self._entered_ns is None:
            self._entered_ns = now_ns
        if now_ns - self._entered_ns >= self.sustain_ns:
            self.t_converge_ns = self._entered_ns
