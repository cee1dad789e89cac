"""Scenario files: schema, parsing, validation.

A scenario is one JSON document describing the physical layout, the radio
environment, the link impairments, the applications, and the run
settings.  Times and rates in the file use human units (seconds, hertz);
conversion to integer nanoseconds happens when worlds are built, never
here, so a parsed scenario echoes back exactly what it will run.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Annotated, Literal, Union

import pydantic
from pydantic import BaseModel, ConfigDict, Field

from botlink import errors

TRACE_KINDS = ("pose", "rssi", "assoc", "packet", "control")


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SyncSection(_Section):
    mode: Literal["synchronized", "unsynchronized"] = "synchronized"
    physics_step_s: float = Field(default=0.01, gt=0)
    real_time_factor: float = Field(default=1.0, gt=0, le=1)
    time_scale: int = Field(default=1, ge=1)


class FreeSpaceSection(_Section):
    model: Literal["free_space"] = "free_space"
    frequency_hz: float = Field(default=2.4e9, gt=0)
    system_loss_db: float = Field(default=0.0, ge=0)


class LogDistanceSection(_Section):
    model: Literal["log_distance"] = "log_distance"
    exponent: float = Field(default=3.0, gt=0)
    ref_loss_db: float = Field(default=40.0, ge=0)
    ref_distance_m: float = Field(default=1.0, gt=0)


PropagationSection = Annotated[
    Union[FreeSpaceSection, LogDistanceSection], Field(discriminator="model")
]


class CongestionSection(_Section):
    start_s: float = Field(ge=0)
    end_s: float = Field(ge=0)
    extra_loss: float = Field(ge=0, le=1)


class LossSection(_Section):
    base_loss: float = Field(default=0.0, ge=0, le=1)
    jitter_s: float = Field(default=0.0, ge=0)
    congestion: list[CongestionSection] = Field(default_factory=list)


class LinkSection(_Section):
    bitrate_bps: float = Field(default=54e6, ge=0)
    fixed_latency_s: float = Field(default=0.0, ge=0)
    loss: LossSection = Field(default_factory=LossSection)


class AssociationSection(_Section):
    threshold_dbm: float = -90.0
    hysteresis_db: float = Field(default=4.0, ge=0)
    handover_gap_s: float = Field(default=0.2, ge=0)
    scan_interval_s: float = Field(default=0.1, gt=0)
    scan_epsilon_m: float = Field(default=0.5, gt=0)


class RadioSection(_Section):
    tx_power_dbm: float = 20.0
    antenna_gain_db: float = 0.0
    sensitivity_dbm: float = -94.0


class RobotSection(_Section):
    id: str
    x: float = 0.0
    y: float = 0.0
    theta: float = 0.0
    v_max: float = Field(default=2.0, gt=0)
    w_max: float = Field(default=3.0, gt=0)
    accel_limit: float = Field(default=1.0, gt=0)
    waypoints: list[tuple[float, float]] = Field(default_factory=list)
    radio: RadioSection = Field(default_factory=RadioSection)


class AccessPointSection(_Section):
    id: str
    x: float = 0.0
    y: float = 0.0
    radio: RadioSection = Field(default_factory=RadioSection)


class WiredHostSection(_Section):
    id: str
    attached_ap: str


class CartSection(_Section):
    cart_mass: float = Field(default=1.0, gt=0)
    pole_mass: float = Field(default=0.1, gt=0)
    pole_half_length: float = Field(default=0.5, gt=0)
    gravity: float = Field(default=9.81, gt=0)
    x0: float = 0.0
    x_dot0: float = 0.0
    theta0: float = 0.0
    theta_dot0: float = 0.0


class ControllerSection(_Section):
    host: str
    kp: float
    ki: float = 0.0
    kd: float = 0.0
    setpoint: float = 0.0
    output_limit: float = Field(default=10.0, gt=0)
    integral_limit: float = Field(default=1.0, gt=0)
    sensor_rate_hz: float = Field(default=100.0, gt=0)
    sensor_size_bytes: int = Field(default=64, ge=0)
    force_size_bytes: int = Field(default=32, ge=0)


class PlantSection(_Section):
    id: str
    x: float = 0.0
    y: float = 0.0
    cart: CartSection = Field(default_factory=CartSection)
    controller: ControllerSection | None = None
    radio: RadioSection = Field(default_factory=RadioSection)


class TrafficSection(_Section):
    src: str
    dst: str
    rate_hz: float = Field(gt=0)
    size_bytes: int = Field(default=256, ge=0)
    start_s: float = Field(default=0.0, ge=0)
    end_s: float | None = None


class TraceSection(_Section):
    kinds: list[Literal["pose", "rssi", "assoc", "packet", "control"]] = Field(
        default_factory=lambda: list(TRACE_KINDS)
    )
    sample_interval_s: float = Field(default=0.1, gt=0)


class Scenario(_Section):
    name: str
    seed: int = 0
    duration_s: float = Field(gt=0)
    sync: SyncSection = Field(default_factory=SyncSection)
    propagation: PropagationSection = Field(default_factory=FreeSpaceSection)
    link: LinkSection = Field(default_factory=LinkSection)
    association: AssociationSection = Field(default_factory=AssociationSection)
    trace: TraceSection = Field(default_factory=TraceSection)
    robots: list[RobotSection] = Field(default_factory=list)
    access_points: list[AccessPointSection] = Field(default_factory=list)
    wired_hosts: list[WiredHostSection] = Field(default_factory=list)
    plants: list[PlantSection] = Field(default_factory=list)
    traffic: list[TrafficSection] = Field(default_factory=list)


def _loc_to_path(loc: tuple[object, ...]) -> str:
    parts: list[str] = []
    for item in loc:
        if isinstance(item, int):
            parts.append(f"[{item}]")
        else:
            parts.append(f".{item}" if parts else str(item))
    return "".join(parts)


def _cross_check(s: Scenario) -> None:
    """Referential checks pydantic field types cannot express."""
    ids: dict[str, str] = {}
    for group, items in (
        ("robots", s.robots),
        ("access_points", s.access_points),
        ("wired_hosts", s.wired_hosts),
        ("plants", s.plants),
    ):
        for i, item in enumerate(items):
            path = f"{group}[{i}].id"
            if item.id in ids:
                raise errors.ValidationError(
                    path, f"duplicate node id {item.id!r} (also {ids[item.id]})"
                )
            ids[item.id] = path

    ap_ids = {ap.id for ap in s.access_points}
    for i, host in enumerate(s.wired_hosts):
        if host.attached_ap not in ap_ids:
            raise errors.ValidationError(
                f"wired_hosts[{i}].attached_ap",
                f"unknown access point {host.attached_ap!r}",
            )

    for i, plant in enumerate(s.plants):
        if plant.controller is not None and plant.controller.host not in ids:
            raise errors.ValidationError(
                f"plants[{i}].controller.host",
                f"unknown node {plant.controller.host!r}",
            )

    for i, flow in enumerate(s.traffic):
        if flow.src not in ids:
            raise errors.ValidationError(f"traffic[{i}].src", f"unknown node {flow.src!r}")
        if flow.dst not in ids:
            raise errors.ValidationError(f"traffic[{i}].dst", f"unknown node {flow.dst!r}")
        if flow.end_s is not None and flow.end_s <= flow.start_s:
            raise errors.ValidationError(
                f"traffic[{i}].end_s", f"end_s {flow.end_s} not after start_s {flow.start_s}"
            )

    for i, window in enumerate(s.link.loss.congestion):
        if window.end_s <= window.start_s:
            raise errors.ValidationError(
                f"link.loss.congestion[{i}].end_s",
                f"end_s {window.end_s} not after start_s {window.start_s}",
            )


def parse_scenario(data: object) -> Scenario:
    """Validate an already-deserialized document."""
    try:
        scenario = Scenario.model_validate(data)
    except pydantic.ValidationError as exc:
        first = exc.errors()[0]
        raise errors.ValidationError(_loc_to_path(first["loc"]), first["msg"]) from exc
    _cross_check(scenario)
    return scenario


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise errors.ParseError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise errors.ParseError(f"{path}: invalid JSON: {exc}") from exc
    return parse_scenario(data)


def load_builtin(name: str) -> Scenario:
    """Load one of the scenario files shipped inside the package."""
    ref = resources.files("botlink.scenarios").joinpath("data").joinpath(name)
    try:
        text = ref.read_text()
    except FileNotFoundError as exc:
        raise errors.ParseError(f"no builtin scenario named {name!r}") from exc
    return parse_scenario(json.loads(text))


def dump_resolved(scenario: Scenario, path: str | Path) -> None:
    """Write the scenario with every default filled in.

    Loading the written file parses back equal to the original, which the
    tests rely on to prove nothing is lost between file and run.
    """
    Path(path).write_text(scenario.model_dump_json(indent=2) + "\n")
