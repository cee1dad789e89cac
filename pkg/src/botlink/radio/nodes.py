"""Network node and packet records."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


@dataclass(frozen=True)
class RadioParams:
    """Per-node radio front end.

    tx_power_dbm: transmit power.
    antenna_gain_db: applied on both transmit and receive.
    sensitivity_dbm: frames below this receive level are lost.
    """

    tx_power_dbm: float = 20.0
    antenna_gain_db: float = 0.0
    sensitivity_dbm: float = -94.0


class NodeKind(Enum):
    STATION = "station"
    ACCESS_POINT = "access_point"
    WIRED_HOST = "wired_host"


@dataclass
class NetNode:
    """One addressable endpoint.

    Stations are mobile radios that associate to access points.  Access
    points are fixed radios joined by an ideal wired backhaul.  A wired
    host hangs off one access point's wired side (no radio hop of its
    own): the attachment is by AP id in attached_ap.
    """

    node_id: str
    kind: NodeKind
    x: float = 0.0
    y: float = 0.0
    radio: RadioParams = field(default_factory=RadioParams)
    attached_ap: str | None = None


@dataclass(frozen=True)
class Packet:
    packet_id: int
    src: str
    dst: str
    size_bytes: int
    sent_ns: int
    payload: object = None
