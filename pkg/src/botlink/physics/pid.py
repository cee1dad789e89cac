"""Discrete PID controller with output and integral clamping.

The controller is a value object: pid_step returns the updated controller
alongside the output, so callers that replay packets or fork simulations
never share mutable state by accident.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class PidController:
    kp: float
    ki: float
    kd: float
    output_limit: float
    integral_limit: float
    integral: float = 0.0
    prev_error: float = 0.0
    primed: bool = False  # False until the first sample, so kd has a previous error to diff against


def _clamp(value: float, limit: float) -> float:
    return max(-limit, min(limit, value))


def pid_step(ctl: PidController, error: float, dt: float) -> tuple[PidController, float]:
    """One controller update.

    The integral accumulates error * dt and is clamped to +-integral_limit
    (simple anti-windup).  The derivative uses a backward difference and is
    zero on the very first sample.  Output is clamped to +-output_limit.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")

    integral = _clamp(ctl.integral + error * dt, ctl.integral_limit)
    derivative = (error - ctl.prev_error) / dt if ctl.primed else 0.0
    output = _clamp(ctl.kp * error + ctl.ki * integral + ctl.kd * derivative, ctl.output_limit)
    return replace(ctl, integral=integral, prev_error=error, primed=True), output
