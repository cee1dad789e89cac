"""Network world: node registry, signal model, association, datapath.

The world owns a single seeded RNG so every random draw in a run comes
from one reproducible stream.  Association is a small per-station state
machine driven by scans; a scan runs either on a fixed period or when the
station has moved far enough since its last scan, and performs at most
one state transition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Union

from botlink.errors import UnknownNode
from botlink.radio.channel import Dropped, LinkParams, Scheduled, transit
from botlink.radio.nodes import NetNode, NodeKind, Packet
from botlink.radio.propagation import PathLossModel, path_loss
from botlink.timebase import NS_PER_MS

RSSI_NONE = 0.0  # reported when a station has no link; real levels are far below zero


@dataclass(frozen=True)
class AssociationConfig:
    threshold_dbm: float = -90.0
    hysteresis_db: float = 4.0
    handover_gap_ns: int = 200 * NS_PER_MS
    scan_interval_ns: int = 100 * NS_PER_MS
    scan_epsilon_m: float = 0.5


@dataclass(frozen=True)
class Associated:
    ap: str


@dataclass(frozen=True)
class Scanning:
    until_ns: int


@dataclass(frozen=True)
class Unassociated:
    pass


Association = Union[Associated, Scanning, Unassociated]


def _state_name(assoc: Association) -> str:
    if isinstance(assoc, Associated):
        return "associated"
    if isinstance(assoc, Scanning):
        return "scanning"
    return "unassociated"


@dataclass(frozen=True)
class AssocTransition:
    at_ns: int
    station: str
    from_state: str
    to_state: str
    from_ap: str
    to_ap: str
    reason: str
    x: float


class NetWorld:
    def __init__(
        self,
        model: PathLossModel,
        link: LinkParams | None = None,
        assoc: AssociationConfig | None = None,
        seed: int = 0,
    ) -> None:
        self.model = model
        self.link = link if link is not None else LinkParams()
        self.assoc_cfg = assoc if assoc is not None else AssociationConfig()
        self.rng = random.Random(seed)
        self.nodes: dict[str, NetNode] = {}
        self.associations: dict[str, Association] = {}
        self.transitions: list[AssocTransition] = []
        self._next_scan_ns: dict[str, int] = {}
        self._scan_anchor: dict[str, tuple[float, float]] = {}
        self._packet_seq = 0

    # -- registry ---------------------------------------------------------

    def add_node(self, node: NetNode) -> None:
        if node.node_id in self.nodes:
            raise ValueError(f"duplicate node id {node.node_id!r}")
        if node.kind is NodeKind.WIRED_HOST:
            if not node.attached_ap:
                raise ValueError(f"wired host {node.node_id!r} needs attached_ap")
        self.nodes[node.node_id] = node
        if node.kind is NodeKind.STATION:
            self.associations[node.node_id] = Unassociated()
            self._next_scan_ns[node.node_id] = 0
            self._scan_anchor[node.node_id] = (node.x, node.y)

    def node(self, node_id: str) -> NetNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownNode(f"no network node named {node_id!r}") from None

    def access_points(self) -> list[NetNode]:
        return [n for n in self.nodes.values() if n.kind is NodeKind.ACCESS_POINT]

    # -- signal -----------------------------------------------------------

    def rssi_between(self, tx_id: str, rx_id: str) -> float:
        """Receive level [dBm] of tx's signal at rx."""
        tx = self.node(tx_id)
        rx = self.node(rx_id)
        distance = ((tx.x - rx.x) ** 2 + (tx.y - rx.y) ** 2) ** 0.5
        return (
            tx.radio.tx_power_dbm
            + tx.radio.antenna_gain_db
            + rx.radio.antenna_gain_db
            - path_loss(self.model, distance)
        )

    def best_ap(self, station_id: str) -> tuple[str, float] | None:
        """Strongest AP as heard by the station; ties broken by AP id."""
        candidates = [
            (self.rssi_between(ap.node_id, station_id), ap.node_id)
            for ap in self.access_points()
        ]
        if not candidates:
            return None
        rssi, ap_id = min(candidates, key=lambda c: (-c[0], c[1]))
        return ap_id, rssi

    def current_ap(self, station_id: str) -> str | None:
        assoc = self.associations[station_id]
        return assoc.ap if isinstance(assoc, Associated) else None

    def reported_rssi(self, station_id: str) -> float:
        """Downlink level from the associated AP, or RSSI_NONE without one."""
        assoc = self.associations[station_id]
        if isinstance(assoc, Associated):
            return self.rssi_between(assoc.ap, station_id)
        return RSSI_NONE

    # -- association ------------------------------------------------------

    def _transition(
        self,
        now_ns: int,
        station_id: str,
        to: Association,
        reason: str,
    ) -> None:
        old = self.associations[station_id]
        node = self.node(station_id)
        self.transitions.append(
            AssocTransition(
                at_ns=now_ns,
                station=station_id,
                from_state=_state_name(old),
                to_state=_state_name(to),
                from_ap=old.ap if isinstance(old, Associated) else "",
                to_ap=to.ap if isinstance(to, Associated) else "",
                reason=reason,
                x=node.x,
            )
        )
        self.associations[station_id] = to

    def association_scan(self, station_id: str, now_ns: int) -> None:
        """Evaluate the state machine once for one station.

        At most one transition happens per scan.  Rule order: finish an
        in-progress scan, then drop a link that fell below threshold, then
        start a handover scan if a clearly better AP exists, then start an
        acquisition scan if unassociated but in range.
        """
        cfg = self.assoc_cfg
        assoc = self.associations[station_id]
        best = self.best_ap(station_id)
        node = self.node(station_id)
        self._scan_anchor[station_id] = (node.x, node.y)
        self._next_scan_ns[station_id] = now_ns + cfg.scan_interval_ns

        if isinstance(assoc, Scanning):
            if now_ns >= assoc.until_ns:
                if best is not None and best[1] >= cfg.threshold_dbm:
                    self._transition(now_ns, station_id, Associated(best[0]), "scan complete")
                else:
                    self._transition(now_ns, station_id, Unassociated(), "no ap in range")
            return

        if isinstance(assoc, Associated):
            current_rssi = self.rssi_between(assoc.ap, station_id)
            if current_rssi < cfg.threshold_dbm:
                self._transition(now_ns, station_id, Unassociated(), "signal lost")
                return
            if (
                best is not None
                and best[0] != assoc.ap
                and best[1] > current_rssi + cfg.hysteresis_db
            ):
                self._transition(
                    now_ns, station_id, Scanning(now_ns + cfg.handover_gap_ns), "handover"
                )
            return

        if best is not None and best[1] >= cfg.threshold_dbm:
            self._transition(now_ns, station_id, Scanning(now_ns + cfg.handover_gap_ns), "acquire")

    def settle(self, now_ns: int = 0) -> None:
        """Associate every in-range station instantly.

        Used at scenario start so t=0 does not begin with every station
        serving the no-link sentinel while acquisition scans run.
        """
        for node in self.nodes.values():
            if node.kind is not NodeKind.STATION:
                continue
            best = self.best_ap(node.node_id)
            if best is not None and best[1] >= self.assoc_cfg.threshold_dbm:
                self._transition(now_ns, node.node_id, Associated(best[0]), "initial")
            self._next_scan_ns[node.node_id] = now_ns + self.assoc_cfg.scan_interval_ns
            self._scan_anchor[node.node_id] = (node.x, node.y)

    def mobility_update(self, node_id: str, x: float, y: float, now_ns: int) -> None:
        """Mirror a position from the physics side; may trigger a scan."""
        node = self.node(node_id)
        node.x = x
        node.y = y
        if node.kind is not NodeKind.STATION:
            return
        ax, ay = self._scan_anchor[node_id]
        moved = ((x - ax) ** 2 + (y - ay) ** 2) ** 0.5
        if moved >= self.assoc_cfg.scan_epsilon_m:
            self.association_scan(node_id, now_ns)

    def scan_if_due(self, now_ns: int) -> None:
        """Run the periodic scan for every station whose timer expired."""
        for station_id in sorted(self.associations):
            if now_ns >= self._next_scan_ns[station_id]:
                self.association_scan(station_id, now_ns)

    def drain_transitions(self) -> list[AssocTransition]:
        out = self.transitions
        self.transitions = []
        return out

    # -- datapath ---------------------------------------------------------

    def make_packet(self, src: str, dst: str, size_bytes: int, now_ns: int, payload: object = None) -> Packet:
        pkt = Packet(
            packet_id=self._packet_seq,
            src=src,
            dst=dst,
            size_bytes=size_bytes,
            sent_ns=now_ns,
            payload=payload,
        )
        self._packet_seq += 1
        return pkt

    def _edge_ap(self, node: NetNode, role: str) -> str | Dropped:
        """The AP that fronts this endpoint on the wired core."""
        if node.kind is NodeKind.ACCESS_POINT:
            return node.node_id
        if node.kind is NodeKind.WIRED_HOST:
            return node.attached_ap  # validated at add_node
        assoc = self.associations[node.node_id]
        if isinstance(assoc, Associated):
            return assoc.ap
        return Dropped(f"{role} not associated")

    def send(self, packet: Packet) -> Scheduled | Dropped:
        """Classify one transmission attempt.

        Stage order matters for reproducibility: association and signal
        checks consume no randomness, and the loss/jitter stage always
        consumes exactly two draws once reached.
        """
        src = self.node(packet.src)
        dst = self.node(packet.dst)

        src_ap = self._edge_ap(src, "source")
        if isinstance(src_ap, Dropped):
            return src_ap
        dst_ap = self._edge_ap(dst, "destination")
        if isinstance(dst_ap, Dropped):
            return dst_ap

        if src.kind is NodeKind.STATION:
            level = self.rssi_between(packet.src, src_ap)
            if level < self.node(src_ap).radio.sensitivity_dbm:
                return Dropped("weak signal")
        if dst.kind is NodeKind.STATION:
            level = self.rssi_between(dst_ap, packet.dst)
            if level < dst.radio.sensitivity_dbm:
                return Dropped("weak signal")

        wired_hops = 1 if src_ap != dst_ap else 0
        return transit(self.link, packet.size_bytes, packet.sent_ns, wired_hops, self.rng)
