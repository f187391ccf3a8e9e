from __future__ import annotations

import math
from pathlib import Path

import pytest

from singbench.geometry import Pose
from singbench.robot import load_robot

ROOT = Path(__file__).resolve().parents[1]
ROBOTS = ROOT / "robots"


@pytest.fixture(scope="session")
def hexapod():
    return load_robot(ROBOTS / "gsp_6_6.json")


@pytest.fixture(scope="session")
def octahedral():
    return load_robot(ROBOTS / "gsp_3_3.json")


@pytest.fixture(scope="session")
def screws():
    return load_robot(ROBOTS / "equivalent_screws_4dof.json")


def random_pose(rng, spread: float = 0.35) -> Pose:
    q = [rng.gauss(0, 1) for _ in range(4)]
    n = math.sqrt(sum(v * v for v in q)) or 1.0
    return Pose(
        tuple(rng.uniform(-spread, spread) for _ in range(3)),
        tuple(v / n for v in q),
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    rows = {}
    for key, status in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for rep in terminalreporter.stats.get(key, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::" not in nodeid:
                continue
            if key != "error" and getattr(rep, "when", "call") != "call":
                continue
            name = nodeid.split("::")[-1]
            if rows.get(name) != "FAIL":
                rows[name] = status
    if not rows:
        return
    try:
        from test_acceptance import CRITERIA
    except ImportError:
        CRITERIA = {}
    terminalreporter.write_sep("-", "acceptance criteria")
    order = {n: i for i, n in enumerate(CRITERIA)}
    for name in sorted(rows, key=lambda n: order.get(n, len(order))):
        label = CRITERIA.get(name, name)
        terminalreporter.write_line(f"{rows[name]}: {label}")
