"""Integer-nanosecond time base.

Every simulation timestamp and duration in the engine is a non-negative
``int`` of nanoseconds since run start. Integer arithmetic keeps traces
byte-reproducible and avoids float drift; ``round(x * NS_PER_S)`` maps a
float value of seconds onto the grid exactly for the step sizes used here.
The representable range is unbounded (Python ints), comfortably past
1e6 simulated seconds.
"""

from __future__ import annotations

from dataclasses import dataclass

NS_PER_S = 1_000_000_000
NS_PER_MS = 1_000_000
NS_PER_US = 1_000


def ns_from_s(seconds: float) -> int:
    """Convert seconds (float or int) to integer nanoseconds."""
    return round(seconds * NS_PER_S)


def s_from_ns(ns: int) -> float:
    """Convert integer nanoseconds to float seconds (trace edges only)."""
    return ns / NS_PER_S


@dataclass(frozen=True)
class ClockPair:
    """A simulation instant paired with the wall-clock instant it was observed.

    Both are nanoseconds since run start. With a real-time factor rho the
    physics side never runs faster than rho, so wall_ns >= sim_ns / rho
    up to scheduler jitter.
    """

    sim_ns: int
    wall_ns: int


def virtual_wall_ns(sim_ns: int, rho: float, time_scale: int) -> int:
    """Ideal wall-clock position for a simulation instant.

    The physics side is paced at rho <= 1 (sim seconds per wall second) and
    the whole co-simulation may be dilated by an integer factor to make the
    network side appear that factor faster to the applications.
    """
    return round(sim_ns * time_scale / rho)


def unsync_arrival_ns(sent_ns: int, transit_ns: int, rho: float, time_scale: int) -> int:
    """Sim time at which an uncoordinated delivery lands.

    Without synchronization the network runs against the wall clock: a packet
    sent at wall w arrives at wall w + transit, and the paced physics clock
    has only advanced by rho * transit / time_scale by then.
    """
    return sent_ns + round(transit_ns * rho / time_scale)


def format_float(x: float) -> str:
    """Fixed-format float for CSV cells: 9 significant digits."""
    return format(float(x), ".9g")
