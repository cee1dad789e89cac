"""Discrete-event queue with a strict (timestamp, phase, sequence) order."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from botlink.errors import SchedulingInPast


class EventKind(str, Enum):
    PHYSICS_STEP = "physics_step"
    PACKET_ARRIVAL = "packet_arrival"
    ASSOCIATION_SCAN = "association_scan"
    TRACE_SAMPLE = "trace_sample"
    CUSTOM = "custom"


# When several events share a timestamp the physics step runs first, so a
# delivery stamped at a step boundary affects the interval that opens at
# the boundary, not the one that just closed.  Within a phase, insertion
# order decides.
_PHASE = {
    EventKind.PHYSICS_STEP: 0,
    EventKind.ASSOCIATION_SCAN: 1,
    EventKind.PACKET_ARRIVAL: 2,
    EventKind.CUSTOM: 3,
    EventKind.TRACE_SAMPLE: 4,
}


@dataclass(frozen=True)
class Event:
    at_ns: int
    seq: int
    kind: EventKind
    payload: Any = None
    tag: str = ""  # distinguishes CUSTOM events


class EventQueue:
    """Min-heap of events ordered by (at_ns, phase, seq).

    seq is assigned at insertion, so simultaneous events of one phase pop
    in the order they were scheduled. The queue tracks the timestamp of the
    last pop and refuses events scheduled before it.
    """

    def __init__(self) -> None:
        self._heap: list[tuple[int, int, int, Event]] = []
        self._seq = itertools.count()
        self._watermark = 0

    def __len__(self) -> int:
        return len(self._heap)

    @property
    def watermark_ns(self) -> int:
        """Timestamp of the most recently popped event (current sim time)."""
        return self._watermark

    def schedule(self, at_ns: int, kind: EventKind, payload: Any = None, tag: str = "") -> Event:
        if at_ns < self._watermark:
            raise SchedulingInPast(
                f"event at t={at_ns} ns is before current time {self._watermark} ns"
            )
        event = Event(at_ns, next(self._seq), kind, payload, tag)
        heapq.heappush(self._heap, (event.at_ns, _PHASE[kind], event.seq, event))
        return event

    def peek_time(self) -> int | None:
        return self._heap[0][0] if self._heap else None

    def pop(self) -> Event:
        _, _, _, event = heapq.heappop(self._heap)
        self._watermark = event.at_ns
        return event
