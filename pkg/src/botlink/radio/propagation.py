"""Radio path-loss models.

Both models return loss in dB for a planar distance in meters.  Distances
below MIN_DISTANCE_M are clamped up to it: the far-field formulas diverge
to -inf as d -> 0, and colocated nodes should just see a very strong
signal, not a crash.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

MIN_DISTANCE_M = 0.1

# 20*log10(4*pi/c) with c in m/s; the constant term of the free-space
# formula when distance is in meters and frequency in Hz.
_FSPL_CONST_DB = 20.0 * math.log10(4.0 * math.pi / 299_792_458.0)


@dataclass(frozen=True)
class FreeSpace:
    """Free-space loss plus a flat system-loss term.

    loss = 20 log10(d) + 20 log10(f) + 20 log10(4 pi / c) + system_loss
    with d in meters, f in Hz.  system_loss lumps cable, connector and
    miscellaneous losses in dB.
    """

    frequency_hz: float = 2.4e9
    system_loss_db: float = 0.0

    def loss_db(self, distance_m: float) -> float:
        d = max(distance_m, MIN_DISTANCE_M)
        return (
            20.0 * math.log10(d)
            + 20.0 * math.log10(self.frequency_hz)
            + _FSPL_CONST_DB
            + self.system_loss_db
        )


@dataclass(frozen=True)
class LogDistance:
    """Log-distance model: ref_loss at ref_distance, exponent beyond it.

    loss = ref_loss + 10 * exponent * log10(d / ref_distance)
    """

    exponent: float = 3.0
    ref_loss_db: float = 40.0
    ref_distance_m: float = 1.0

    def loss_db(self, distance_m: float) -> float:
        d = max(distance_m, MIN_DISTANCE_M)
        return self.ref_loss_db + 10.0 * self.exponent * math.log10(d / self.ref_distance_m)


PathLossModel = Union[FreeSpace, LogDistance]


def path_loss(model: PathLossModel, distance_m: float) -> float:
    return model.loss_db(distance_m)
