from botlink.scenarios.config import Scenario, load_scenario
from botlink.scenarios.runners import build_scenario, run_scenario
from botlink.scenarios.traces import KIND_COLUMNS, TraceSink, read_trace

__all__ = [
    "Scenario",
    "load_scenario",
    "build_scenario",
    "run_scenario",
    "TraceSink",
    "KIND_COLUMNS",
    "read_trace",
]
