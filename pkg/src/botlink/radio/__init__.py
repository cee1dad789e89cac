from botlink.radio.channel import Dropped, LossProfile, Scheduled
from botlink.radio.nodes import NetNode, NodeKind, Packet, RadioParams
from botlink.radio.propagation import MIN_DISTANCE_M, FreeSpace, LogDistance, path_loss
from botlink.radio.world import (
    Association,
    AssociationConfig,
    AssocTransition,
    NetWorld,
)

__all__ = [
    "FreeSpace",
    "LogDistance",
    "path_loss",
    "MIN_DISTANCE_M",
    "RadioParams",
    "NodeKind",
    "NetNode",
    "Packet",
    "AssociationConfig",
    "Association",
    "AssocTransition",
    "NetWorld",
    "LossProfile",
    "Dropped",
    "Scheduled",
]
