"""botlink: lockstep co-simulation of 2D robots and a wireless network.

A continuous-time physics world (differential-drive robots, a cart-pole
plant) is stepped at a fixed interval and coupled to a discrete-event
radio network (RSSI-driven association, lossy packet delivery) through a
deterministic coordinator. Robot positions flow into the network each
step; packets flow back through a timestamp gate that either releases
them at their deadline or discards them as late.
"""

from botlink.coordinator import RunReport, SyncConfig, SyncMode, run_lockstep
from botlink.events import Event, EventKind, EventQueue
from botlink.gate import Discard, Release, gate

__version__ = "0.1.0"

__all__ = [
    "Event",
    "EventKind",
    "EventQueue",
    "Release",
    "Discard",
    "gate",
    "SyncConfig",
    "SyncMode",
    "RunReport",
    "run_lockstep",
    "__version__",
]
