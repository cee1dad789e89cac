import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from botlink.errors import NonFiniteInput
from botlink.physics.robots import (
    DiffDriveParams,
    Pose2D,
    RobotState,
    WaypointPolicy,
    advance_waypoints,
    follow_waypoints,
    step_diff_drive,
    wrap_angle,
)

PARAMS = DiffDriveParams(v_max=2.0, w_max=3.0, accel_limit=1.0)


def test_straight_line_motion():
    state = RobotState(pose=Pose2D(0.0, 0.0, 0.0))
    out = step_diff_drive(state, 1.0, 0.0, 1.0, PARAMS)
    assert out.pose == Pose2D(1.0, 0.0, 0.0)
    assert out.v == 1.0


def test_pure_rotation_lands_on_pi():
    state = RobotState(pose=Pose2D(0.0, 0.0, 0.0))
    out = step_diff_drive(state, 0.0, math.pi, 1.0, DiffDriveParams(w_max=10.0))
    assert out.pose.theta == math.pi
    assert out.pose.x == 0.0 and out.pose.y == 0.0


def test_unicycle_circle_oracle():
    """1000 steps of v=1, w=1 at dt=1 ms against the closed-form circle.

    Starting with realized v=1 so the slew limiter is inactive; the exact
    trajectory is x=sin t, y=1-cos t, theta=t.
    """
    state = RobotState(pose=Pose2D(0.0, 0.0, 0.0), v=1.0)
    for _ in range(1000):
        state = step_diff_drive(state, 1.0, 1.0, 0.001, PARAMS)
    assert abs(state.pose.x - math.sin(1.0)) < 1e-3
    assert abs(state.pose.y - (1.0 - math.cos(1.0))) < 1e-3
    assert abs(state.pose.theta - 1.0) < 1e-6


def test_acceleration_slew_limits_linear_velocity():
    state = RobotState(pose=Pose2D(0.0, 0.0, 0.0), v=0.0)
    out = step_diff_drive(state, 2.0, 0.0, 0.1, PARAMS)
    # accel_limit 1 m/s^2 over 0.1 s allows only 0.1 m/s
    assert out.v == pytest.approx(0.1)
    out = step_diff_drive(out, -2.0, 0.0, 0.1, PARAMS)
    assert out.v == pytest.approx(0.0)


def test_angular_velocity_snaps_to_command():
    state = RobotState(pose=Pose2D(0.0, 0.0, 0.0), w=0.0)
    out = step_diff_drive(state, 0.0, 2.5, 0.01, PARAMS)
    assert out.w == 2.5


def test_velocity_clamps():
    state = RobotState(pose=Pose2D(0.0, 0.0, 0.0), v=2.0)
    out = step_diff_drive(state, 99.0, -99.0, 0.1, PARAMS)
    assert out.v <= PARAMS.v_max
    assert out.w == -PARAMS.w_max


def test_non_finite_command_rejected():
    state = RobotState(pose=Pose2D(0.0, 0.0, 0.0))
    with pytest.raises(NonFiniteInput):
        step_diff_drive(state, float("nan"), 0.0, 0.01, PARAMS)
    with pytest.raises(NonFiniteInput):
        step_diff_drive(state, 0.0, float("inf"), 0.01, PARAMS)


def test_non_positive_dt_rejected():
    state = RobotState(pose=Pose2D(0.0, 0.0, 0.0))
    with pytest.raises(ValueError):
        step_diff_drive(state, 1.0, 0.0, 0.0, PARAMS)


def test_stepping_is_pure():
    state = RobotState(pose=Pose2D(1.0, 2.0, 0.5), v=0.7, w=0.2)
    a = step_diff_drive(state, 1.0, 0.5, 0.01, PARAMS)
    b = step_diff_drive(state, 1.0, 0.5, 0.01, PARAMS)
    assert a == b
    assert state.v == 0.7  # input untouched


@given(st.floats(min_value=-100.0, max_value=100.0))
def test_wrap_angle_range_and_identity(theta):
    wrapped = wrap_angle(theta)
    assert -math.pi < wrapped <= math.pi
    # wrapping changes the angle by an exact multiple of 2*pi
    k = (theta - wrapped) / (2.0 * math.pi)
    assert abs(k - round(k)) < 1e-9


def test_wrap_angle_boundaries():
    assert wrap_angle(math.pi) == math.pi
    assert wrap_angle(-math.pi) == math.pi
    assert wrap_angle(0.0) == 0.0
    assert wrap_angle(3.0 * math.pi) == pytest.approx(math.pi)


@given(
    st.floats(min_value=-5.0, max_value=5.0),
    st.floats(min_value=-5.0, max_value=5.0),
    st.floats(min_value=-3.0, max_value=3.0),
)
def test_emitted_velocities_respect_limits(v0, cmd_v, cmd_w):
    state = RobotState(pose=Pose2D(0.0, 0.0, 0.0), v=max(-2.0, min(2.0, v0)))
    out = step_diff_drive(state, cmd_v, cmd_w, 0.05, PARAMS)
    assert abs(out.v) <= PARAMS.v_max + 1e-12
    assert abs(out.w) <= PARAMS.w_max
    assert -math.pi < out.pose.theta <= math.pi


def test_waypoint_already_reached_consumed_with_zero_command():
    state = RobotState(pose=Pose2D(10.0, 0.0, 0.0))
    cmd_v, cmd_w, consumed = follow_waypoints(state, [(10.2, 0.0)], PARAMS)
    assert (cmd_v, cmd_w) == (0.0, 0.0)
    assert consumed == 1


def test_waypoint_follow_straight_run():
    state = RobotState(pose=Pose2D(0.0, 0.0, 0.0))
    waypoints = [(100.0, 0.0)]
    steps = 0
    while waypoints and steps < 100_000:
        state = advance_waypoints(state, waypoints, 0.01, PARAMS)
        steps += 1
    assert not waypoints
    assert math.hypot(state.pose.x - 100.0, state.pose.y) <= 0.5
    # stays on the line
    assert abs(state.pose.y) < 1e-6


def test_waypoint_follow_diagonal_run():
    state = RobotState(pose=Pose2D(0.0, 0.0, 0.0))
    waypoints = [(300.0, 100.0)]
    steps = 0
    while waypoints and steps < 200_000:
        state = advance_waypoints(state, waypoints, 0.01, PARAMS)
        steps += 1
    # decelerate to rest after capture; must remain near the goal
    for _ in range(200):
        state = step_diff_drive(state, 0.0, 0.0, 0.01, PARAMS)
    assert math.hypot(state.pose.x - 300.0, state.pose.y - 100.0) <= 0.5


def test_waypoint_follow_terminates_within_path_length_bound():
    # bound: path length / (useful speed * dt) with slack for turn-in
    state = RobotState(pose=Pose2D(0.0, 0.0, math.pi / 2))
    waypoints = [(50.0, 0.0)]
    limit = int(3 * 50.0 / (PARAMS.v_max * 0.01)) + 1000
    steps = 0
    while waypoints and steps < limit:
        state = advance_waypoints(state, waypoints, 0.01, PARAMS)
        steps += 1
    assert not waypoints


def test_approach_braking_caps_speed_near_goal():
    policy = WaypointPolicy()
    state = RobotState(pose=Pose2D(0.0, 0.0, 0.0), v=2.0)
    cmd_v, _, _ = follow_waypoints(state, [(2.0, 0.0)], PARAMS, policy)
    assert cmd_v <= policy.approach_gain * 2.0


def test_no_waypoints_means_zero_command():
    state = RobotState(pose=Pose2D(0.0, 0.0, 0.0))
    assert follow_waypoints(state, [], PARAMS) == (0.0, 0.0, 0)
