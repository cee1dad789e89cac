from botlink.service.app import create_app
from botlink.service.live import Accepted, LiveSim, Rejected

__all__ = ["create_app", "LiveSim", "Accepted", "Rejected"]
