"""Link transit computation: serialization, latency, jitter, loss.

The channel does not deliver anything itself; it classifies a send attempt
as Scheduled (with an arrival time) or Dropped (with a reason string that
ends up in the packet trace).  Randomness comes from the caller's RNG so
one seeded generator covers the whole network world.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from botlink.timebase import NS_PER_MS


@dataclass(frozen=True)
class CongestionWindow:
    """Extra loss probability active while start_ns <= t < end_ns."""

    start_ns: int
    end_ns: int
    extra_loss: float


@dataclass(frozen=True)
class LossProfile:
    """Stochastic link impairments.

    base_loss: Bernoulli drop probability applied to every frame.
    jitter_ns: arrival time is perturbed uniformly in [-jitter, +jitter].
    congestion: time windows that add to the drop probability.
    """

    base_loss: float = 0.0
    jitter_ns: int = 0
    congestion: tuple[CongestionWindow, ...] = ()

    def loss_at(self, now_ns: int) -> float:
        p = self.base_loss
        for window in self.congestion:
            if window.start_ns <= now_ns < window.end_ns:
                p += window.extra_loss
        return min(p, 1.0)


@dataclass(frozen=True)
class LinkParams:
    """Deterministic link timing.

    bitrate_bps: serialization rate; 0 means serialization is free.
    fixed_latency_ns: propagation plus processing floor.
    """

    bitrate_bps: float = 54e6
    fixed_latency_ns: int = 0
    loss: LossProfile = field(default_factory=LossProfile)


@dataclass(frozen=True)
class Scheduled:
    arrival_ns: int


@dataclass(frozen=True)
class Dropped:
    reason: str


WIRED_HOP_NS = 1 * NS_PER_MS  # backhaul traversal between access points


def transit(
    link: LinkParams,
    size_bytes: int,
    sent_ns: int,
    wired_hops: int,
    rng: random.Random,
) -> Scheduled | Dropped:
    """Classify one send attempt.

    Exactly two RNG draws happen on every call that reaches this function
    (loss test, then jitter), so trace reproducibility does not depend on
    which packets survive.
    """
    loss_p = link.loss.loss_at(sent_ns)
    lost = rng.random() < loss_p

    if link.loss.jitter_ns > 0:
        u = rng.random()
        jitter = round((2.0 * u - 1.0) * link.loss.jitter_ns)
    else:
        rng.random()  # burn the draw to keep the stream position fixed
        jitter = 0

    if lost:
        return Dropped("random loss")

    serialization = 0
    if link.bitrate_bps > 0:
        serialization = round(size_bytes * 8 * 1e9 / link.bitrate_bps)
    arrival = sent_ns + serialization + link.fixed_latency_ns + wired_hops * WIRED_HOP_NS + jitter
    if arrival < sent_ns:
        arrival = sent_ns
    return Scheduled(arrival_ns=arrival)
