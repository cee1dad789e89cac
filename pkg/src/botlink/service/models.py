"""Wire-format models for the live gateway.

These define the exact JSON shapes on the socket and the REST endpoints;
the frontend ships fixture copies of them, so field names here are a
compatibility contract, not an implementation detail.
"""

from __future__ import annotations

from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter


class RobotSnapshot(BaseModel):
    id: str
    x: float
    y: float
    theta: float
    rssi: float  # 0 when unassociated, otherwise dBm (always well below 0)
    ap: str | None


class ApSnapshot(BaseModel):
    id: str
    x: float
    y: float


class Snapshot(BaseModel):
    t_ns: int
    robots: list[RobotSnapshot]
    aps: list[ApSnapshot]
    counters: dict[str, int]


class CommandFrame(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["cmd_vel"]
    robot: str
    v: float
    w: float
    stamp: float | None = None  # client wall-clock ms; echoed for latency probes, unused by the sim


class ControlFrame(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["pause", "resume", "reset"]


InboundFrame = Annotated[Union[CommandFrame, ControlFrame], Field(discriminator="type")]

inbound_adapter: TypeAdapter[CommandFrame | ControlFrame] = TypeAdapter(InboundFrame)


class ErrorFrame(BaseModel):
    type: Literal["error"] = "error"
    message: str


class HealthResponse(BaseModel):
    status: Literal["ok", "stopped"]
