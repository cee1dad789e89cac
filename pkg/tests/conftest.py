"""Shared scenario builders for the test suite."""

import pytest

from botlink.scenarios.config import Scenario, parse_scenario


def minimal_doc(**overrides) -> dict:
    """One robot next to one AP, no traffic, tracing everything."""
    doc = {
        "name": "minimal",
        "seed": 0,
        "duration_s": 1.0,
        "sync": {"mode": "synchronized", "physics_step_s": 0.01},
        "access_points": [{"id": "ap1", "x": 0.0, "y": 0.0}],
        "robots": [{"id": "r1", "x": 3.0, "y": 0.0}],
    }
    doc.update(overrides)
    return doc


@pytest.fixture
def minimal_scenario() -> Scenario:
    return parse_scenario(minimal_doc())
