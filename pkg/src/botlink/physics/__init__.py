from botlink.physics.cartpole import CartPoleParams, CartPoleState, cart_pole_energy, step_cart_pole
from botlink.physics.pid import PidController, pid_step
from botlink.physics.robots import (
    DiffDriveParams,
    Pose2D,
    RobotState,
    WaypointPolicy,
    follow_waypoints,
    step_diff_drive,
    wrap_angle,
)
from botlink.physics.world import PhysicsWorld, Plant, Robot

__all__ = [
    "Pose2D",
    "RobotState",
    "DiffDriveParams",
    "WaypointPolicy",
    "wrap_angle",
    "step_diff_drive",
    "follow_waypoints",
    "CartPoleState",
    "CartPoleParams",
    "step_cart_pole",
    "cart_pole_energy",
    "PidController",
    "pid_step",
    "PhysicsWorld",
    "Robot",
    "Plant",
]
