"""Cart-pole (inverted pendulum on a cart) dynamics.

State is (x, x_dot, theta, theta_dot) with theta measured from the upright
position, positive counter-clockwise.  The pole is a uniform rod of
half-length l hinged at the cart, so its moment of inertia about the hinge
is (4/3) m l^2.  The equations of motion are the standard frictionless
form:

    theta_dd = (g sin(th) + cos(th) * (-F - m l th_d^2 sin(th)) / (M + m))
               / (l * (4/3 - m cos(th)^2 / (M + m)))
    x_dd     = (F + m l (th_d^2 sin(th) - theta_dd cos(th))) / (M + m)

Integration is classical fourth-order Runge-Kutta with the force held
constant across the step (zero-order hold, which matches an actuator that
latches the last received command).  theta is left unwrapped so a fallen
pole keeps accumulating angle instead of aliasing back near zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class CartPoleParams:
    cart_mass: float = 1.0
    pole_mass: float = 0.1
    pole_half_length: float = 0.5
    gravity: float = 9.81


@dataclass(frozen=True)
class CartPoleState:
    x: float
    x_dot: float
    theta: float
    theta_dot: float


def _derivatives(
    state: tuple[float, float, float, float],
    force: float,
    p: CartPoleParams,
) -> tuple[float, float, float, float]:
    _, x_dot, theta, theta_dot = state
    total_mass = p.cart_mass + p.pole_mass
    sin_t = math.sin(theta)
    cos_t = math.cos(theta)
    ml = p.pole_mass * p.pole_half_length

    temp = (-force - ml * theta_dot * theta_dot * sin_t) / total_mass
    theta_dd = (p.gravity * sin_t + cos_t * temp) / (
        p.pole_half_length * (4.0 / 3.0 - p.pole_mass * cos_t * cos_t / total_mass)
    )
    x_dd = (force + ml * (theta_dot * theta_dot * sin_t - theta_dd * cos_t)) / total_mass
    return (x_dot, x_dd, theta_dot, theta_dd)


def step_cart_pole(
    state: CartPoleState,
    force: float,
    dt: float,
    params: CartPoleParams = CartPoleParams(),
) -> CartPoleState:
    """One RK4 step with the force held constant over dt."""
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    y0 = (state.x, state.x_dot, state.theta, state.theta_dot)

    k1 = _derivatives(y0, force, params)
    y1 = tuple(a + 0.5 * dt * b for a, b in zip(y0, k1))
    k2 = _derivatives(y1, force, params)
    y2 = tuple(a + 0.5 * dt * b for a, b in zip(y0, k2))
    k3 = _derivatives(y2, force, params)
    y3 = tuple(a + dt * b for a, b in zip(y0, k3))
    k4 = _derivatives(y3, force, params)

    out = tuple(
        a + (dt / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        for a, b1, b2, b3, b4 in zip(y0, k1, k2, k3, k4)
    )
    return CartPoleState(x=out[0], x_dot=out[1], theta=out[2], theta_dot=out[3])


def cart_pole_energy(state: CartPoleState, params: CartPoleParams = CartPoleParams()) -> float:
    """Total mechanical energy [J], zero force assumed.

    Kinetic: cart translation, pole translation of its center of mass at
    distance l from the hinge, and pole rotation about its own center
    ((1/12)(2l)^2 = l^2/3 per unit mass).  Collecting terms:

        E = 1/2 (M + m) x_d^2 + m l x_d th_d cos(th)
            + 2/3 m l^2 th_d^2 + m g l cos(th)

    Conserved when force = 0, which the integration tests exploit.
    """
    p = params
    x_d = state.x_dot
    th = state.theta
    th_d = state.theta_dot
    kinetic = (
        0.5 * (p.cart_mass + p.pole_mass) * x_d * x_d
        + p.pole_mass * p.pole_half_length * x_d * th_d * math.cos(th)
        + (2.0 / 3.0) * p.pole_mass * p.pole_half_length**2 * th_d * th_d
    )
    potential = p.pole_mass * p.gravity * p.pole_half_length * math.cos(th)
    return kinetic + potential
