"""Planar differential-drive kinematics and waypoint following.

The robot is modelled as a unicycle: state (x, y, theta) advanced by a
commanded linear velocity v [m/s] and angular velocity w [rad/s].  All
integration is explicit Euler over the caller's fixed step; the step is
expected to be small (milliseconds) so the scheme is adequate and cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

from botlink.errors import NonFiniteInput


@dataclass(frozen=True)
class Pose2D:
    x: float
    y: float
    theta: float


@dataclass(frozen=True)
class RobotState:
    """Pose plus the realized velocity from the previous step."""

    pose: Pose2D
    v: float = 0.0
    w: float = 0.0


@dataclass(frozen=True)
class DiffDriveParams:
    """Actuation limits.

    v_max / w_max clamp the commanded velocities symmetrically.  accel_limit
    bounds the change of linear velocity per second; angular velocity is
    assumed to track its command within one step.
    """

    v_max: float = 2.0
    w_max: float = 3.0
    accel_limit: float = 1.0


def wrap_angle(theta: float) -> float:
    """Wrap to (-pi, pi]."""
    wrapped = math.fmod(theta + math.pi, 2.0 * math.pi)
    if wrapped <= 0.0:
        wrapped += 2.0 * math.pi
    return wrapped - math.pi


def _clamp(value: float, limit: float) -> float:
    return max(-limit, min(limit, value))


def step_diff_drive(
    state: RobotState,
    cmd_v: float,
    cmd_w: float,
    dt: float,
    params: DiffDriveParams,
) -> RobotState:
    """Advance one step under a (v, w) command.

    The linear velocity slews toward the clamped command at most
    accel_limit * dt per step; the angular velocity snaps to its clamped
    command.  Raises NonFiniteInput on nan/inf commands so a corrupted
    network payload cannot poison the integrator silently.
    """
    if not (math.isfinite(cmd_v) and math.isfinite(cmd_w)):
        raise NonFiniteInput(f"non-finite velocity command ({cmd_v}, {cmd_w})")
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")

    target_v = _clamp(cmd_v, params.v_max)
    dv = _clamp(target_v - state.v, params.accel_limit * dt)
    v = state.v + dv
    w = _clamp(cmd_w, params.w_max)

    pose = state.pose
    x = pose.x + v * math.cos(pose.theta) * dt
    y = pose.y + v * math.sin(pose.theta) * dt
    theta = wrap_angle(pose.theta + w * dt)
    return RobotState(pose=Pose2D(x, y, theta), v=v, w=w)


@dataclass(frozen=True)
class WaypointPolicy:
    """Tuning for the waypoint follower.

    capture_radius: a waypoint counts as reached within this distance [m].
    heading_gain: proportional gain from heading error to w [1/s].
    approach_gain: caps speed at gain * remaining distance so the robot
    brakes into the waypoint instead of overshooting it [1/s].
    """

    capture_radius: float = 0.5
    heading_gain: float = 2.0
    approach_gain: float = 1.0


def follow_waypoints(
    state: RobotState,
    waypoints: Sequence[tuple[float, float]],
    params: DiffDriveParams,
    policy: WaypointPolicy = WaypointPolicy(),
) -> tuple[float, float, int]:
    """Compute a (v, w) command toward the first unreached waypoint.

    Returns (cmd_v, cmd_w, consumed) where consumed is how many leading
    waypoints are now within the capture radius and should be dropped by
    the caller.  With no waypoints left the command is (0, 0).
    """
    pose = state.pose
    consumed = 0
    target: tuple[float, float] | None = None
    for wp in waypoints:
        dx = wp[0] - pose.x
        dy = wp[1] - pose.y
        if math.hypot(dx, dy) <= policy.capture_radius:
            consumed += 1
            continue
        target = wp
        break

    if target is None:
        return 0.0, 0.0, consumed

    dx = target[0] - pose.x
    dy = target[1] - pose.y
    distance = math.hypot(dx, dy)
    heading_error = wrap_angle(math.atan2(dy, dx) - pose.theta)

    cmd_w = _clamp(policy.heading_gain * heading_error, params.w_max)
    # Slow down when pointing away and when close, whichever binds first.
    cmd_v = min(
        params.v_max * max(0.0, math.cos(heading_error)),
        policy.approach_gain * distance,
    )
    return cmd_v, cmd_w, consumed


def advance_waypoints(
    state: RobotState,
    waypoints: list[tuple[float, float]],
    dt: float,
    params: DiffDriveParams,
    policy: WaypointPolicy = WaypointPolicy(),
) -> RobotState:
    """Convenience wrapper: compute the follow command and step once.

    Mutates `waypoints` in place by dropping captured ones.
    """
    cmd_v, cmd_w, consumed = follow_waypoints(state, waypoints, params, policy)
    if consumed:
        del waypoints[:consumed]
    return step_diff_drive(state, cmd_v, cmd_w, dt, params)
