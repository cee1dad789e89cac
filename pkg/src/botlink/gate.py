"""Timestamp gate between the network side and the physics side.

A packet sent at sim time s with network delay d has a delivery deadline
s + d. When the network side hands the packet over at sim time t, the gate
either releases it with the remaining wait (t <= deadline, so the
application observes exactly d of sim-time delay) or discards it as having
missed its deadline (t > deadline). Pure integer arithmetic; no drift.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Release:
    """Deliver after waiting wait_ns more sim-nanoseconds."""

    wait_ns: int


@dataclass(frozen=True)
class Discard:
    reason: str


GateDecision = Union[Release, Discard]

MISSED_DEADLINE = "missed deadline"


def gate(sent_ns: int, delay_ns: int, now_ns: int) -> GateDecision:
    """Decide the fate of one network-to-physics handover.

    Equality is a release: a packet handed over exactly at its deadline has
    not missed it.
    """
    if delay_ns < 0:
        raise ValueError(f"negative network delay: {delay_ns}")
    deadline = sent_ns + delay_ns
    if now_ns <= deadline:
        return Release(wait_ns=deadline - now_ns)
    return Discard(MISSED_DEADLINE)
