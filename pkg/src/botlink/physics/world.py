"""Container stepping every physical object on a shared fixed timestep.

Two kinds of objects live here: differential-drive robots moving in the
plane, and cart-pole plants that sit at a fixed planar position (their
cart coordinate is internal to the control problem, not a map position).
The world exposes positions() so a network layer can mirror node
placement after each step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from botlink.errors import NonFiniteInput, UnknownNode
from botlink.physics.cartpole import CartPoleParams, CartPoleState, step_cart_pole
from botlink.physics.robots import (
    DiffDriveParams,
    Pose2D,
    RobotState,
    WaypointPolicy,
    follow_waypoints,
    step_diff_drive,
)
from botlink.timebase import NS_PER_MS, s_from_ns

TELEOP_TIMEOUT_NS = 500 * NS_PER_MS


@dataclass
class Robot:
    """A differential-drive robot, driven by waypoints or remote commands.

    When `waypoints` is non-empty the robot steers itself.  Otherwise it
    executes the last remote command until it goes stale (no fresher
    command within TELEOP_TIMEOUT_NS), after which it stops.  The stamp is
    simulation time of receipt, so the timeout is deterministic.
    """

    robot_id: str
    state: RobotState
    params: DiffDriveParams = field(default_factory=DiffDriveParams)
    policy: WaypointPolicy = field(default_factory=WaypointPolicy)
    waypoints: list[tuple[float, float]] = field(default_factory=list)
    cmd_v: float = 0.0
    cmd_w: float = 0.0
    cmd_stamp_ns: int | None = None


@dataclass
class Plant:
    """A cart-pole at a fixed map position, actuated by a latched force."""

    plant_id: str
    state: CartPoleState
    params: CartPoleParams = field(default_factory=CartPoleParams)
    position: tuple[float, float] = (0.0, 0.0)
    force: float = 0.0


class PhysicsWorld:
    def __init__(self) -> None:
        self.robots: dict[str, Robot] = {}
        self.plants: dict[str, Plant] = {}

    def add_robot(self, robot: Robot) -> None:
        self.robots[robot.robot_id] = robot

    def add_plant(self, plant: Plant) -> None:
        self.plants[plant.plant_id] = plant

    def robot(self, robot_id: str) -> Robot:
        try:
            return self.robots[robot_id]
        except KeyError:
            raise UnknownNode(f"no robot named {robot_id!r}") from None

    def plant(self, plant_id: str) -> Plant:
        try:
            return self.plants[plant_id]
        except KeyError:
            raise UnknownNode(f"no plant named {plant_id!r}") from None

    def set_command(self, robot_id: str, v: float, w: float, now_ns: int) -> None:
        """Latch a remote velocity command, stamped with receipt time."""
        if not (math.isfinite(v) and math.isfinite(w)):
            raise NonFiniteInput(f"non-finite velocity command ({v}, {w})")
        robot = self.robot(robot_id)
        robot.cmd_v = v
        robot.cmd_w = w
        robot.cmd_stamp_ns = now_ns

    def set_force(self, plant_id: str, force: float) -> None:
        if not math.isfinite(force):
            raise NonFiniteInput(f"non-finite force {force}")
        self.plant(plant_id).force = force

    def step(self, now_ns: int, dt_ns: int) -> None:
        """Advance every object from now_ns by dt_ns."""
        dt = s_from_ns(dt_ns)
        for robot in self.robots.values():
            if robot.waypoints:
                cmd_v, cmd_w, consumed = follow_waypoints(
                    robot.state, robot.waypoints, robot.params, robot.policy
                )
                if consumed:
                    del robot.waypoints[:consumed]
            elif (
                robot.cmd_stamp_ns is not None
                and now_ns - robot.cmd_stamp_ns <= TELEOP_TIMEOUT_NS
            ):
                cmd_v, cmd_w = robot.cmd_v, robot.cmd_w
            else:
                cmd_v, cmd_w = 0.0, 0.0
            robot.state = step_diff_drive(robot.state, cmd_v, cmd_w, dt, robot.params)

        for plant in self.plants.values():
            plant.state = step_cart_pole(plant.state, plant.force, dt, plant.params)

    def positions(self) -> dict[str, tuple[float, float]]:
        """Current planar position of every object, for the network mirror."""
        out: dict[str, tuple[float, float]] = {}
        for robot in self.robots.values():
            out[robot.robot_id] = (robot.state.pose.x, robot.state.pose.y)
        for plant in self.plants.values():
            out[plant.plant_id] = plant.position
        return out
