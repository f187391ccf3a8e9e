"""Robot structure model: labeled anchor points and six point-to-point legs.

Anchors live in either the base or the platform frame; platform anchors move
with the pose, base anchors stay put.  The same label may be shared by up to
three legs (concurrent lines), which is how reduced superbracket forms arise.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .brackets import InvalidInputError, Label
from .geometry import Pose
from .superbracket import LEG_COUNT, Leg

FRAME_BASE = "base"
FRAME_PLATFORM = "platform"
FRAMES = (FRAME_BASE, FRAME_PLATFORM)

KIND_GSP = "gsp"
KIND_EQUIVALENT_SCREWS = "equivalent-screws"
KINDS = (KIND_GSP, KIND_EQUIVALENT_SCREWS)

# at most this many legs may share one anchor point
MAX_CONCURRENT_LEGS = 3


@dataclass(frozen=True)
class AnchorPoint:
    label: Label
    frame: str
    xyz: tuple[float, float, float]

    def __post_init__(self):
        object.__setattr__(self, "xyz", tuple(float(v) for v in self.xyz))
        if len(self.xyz) != 3:
            raise InvalidInputError(f"anchor {self.label!r} needs 3 coordinates")


@dataclass(frozen=True)
class RobotStructure:
    name: str
    kind: str
    anchors: tuple[AnchorPoint, ...]
    legs: tuple[Leg, ...]

    def anchor_map(self) -> dict[Label, AnchorPoint]:
        return {a.label: a for a in self.anchors}


@dataclass(frozen=True)
class StructureClass:
    """Attachment pattern summary, e.g. 6-6 or 3-3."""

    name: str
    base_points: int
    platform_points: int


def validate(structure: RobotStructure) -> list[str]:
    """All schema violations, empty when the structure is well formed."""
    problems = []
    if not structure.name:
        problems.append("structure name is empty")
    if structure.kind not in KINDS:
        problems.append(f"unknown kind {structure.kind!r}; expected one of {KINDS}")
    seen: dict[Label, AnchorPoint] = {}
    for a in structure.anchors:
        if not a.label:
            problems.append("anchor with empty label")
            continue
        if a.label.endswith("*"):
            problems.append(f"anchor label {a.label!r} may not end with '*'")
        if a.label in seen:
            problems.append(f"duplicate anchor label {a.label!r}")
        seen[a.label] = a
        if a.frame not in FRAMES:
            problems.append(f"anchor {a.label!r} has unknown frame {a.frame!r}")
    if len(structure.legs) != LEG_COUNT:
        problems.append(f"expected {LEG_COUNT} legs, got {len(structure.legs)}")
    usage: Counter = Counter()
    for i, leg in enumerate(structure.legs, start=1):
        if len(leg) != 2:
            problems.append(f"leg {i} is not a pair of labels")
            continue
        u, v = leg
        for l in (u, v):
            if l not in seen:
                problems.append(f"leg {i} refers to unknown anchor {l!r}")
        if u == v:
            problems.append(f"leg {i} joins anchor {u!r} to itself")
        usage.update(leg)
    for label, n in sorted(usage.items()):
        if n > MAX_CONCURRENT_LEGS:
            problems.append(
                f"anchor {label!r} is used by {n} legs (at most {MAX_CONCURRENT_LEGS})"
            )
    if structure.kind == KIND_GSP and not problems:
        amap = structure.anchor_map()
        for i, (u, v) in enumerate(structure.legs, start=1):
            if {amap[u].frame, amap[v].frame} != {FRAME_BASE, FRAME_PLATFORM}:
                problems.append(
                    f"leg {i} ({u}, {v}) must join a base anchor to a platform anchor"
                )
    return problems


def classify_structure(structure: RobotStructure) -> StructureClass:
    """Count distinct attachment points actually used by legs per frame."""
    amap = structure.anchor_map()
    base, platform = set(), set()
    for leg in structure.legs:
        for l in leg:
            if amap[l].frame == FRAME_BASE:
                base.add(l)
            else:
                platform.add(l)
    return StructureClass(f"{len(base)}-{len(platform)}", len(base), len(platform))


def coordinates_at(structure: RobotStructure, pose: Pose) -> dict[Label, np.ndarray]:
    """World coordinates of every anchor: the pose moves platform anchors."""
    out = {}
    for a in structure.anchors:
        p = np.asarray(a.xyz, dtype=float)
        out[a.label] = pose.apply(p) if a.frame == FRAME_PLATFORM else p
    return out


# ---------------------------------------------------------------------------
# JSON round trip


def robot_from_dict(data: Mapping) -> RobotStructure:
    try:
        anchors = tuple(
            AnchorPoint(str(a["label"]), str(a["frame"]), tuple(a["xyz"]))
            for a in data["anchors"]
        )
        legs = tuple((str(u), str(v)) for u, v in data["legs"])
        return RobotStructure(str(data["name"]), str(data["kind"]), anchors, legs)
    except (KeyError, TypeError, ValueError) as err:
        raise InvalidInputError(f"malformed robot structure: {err}") from err


def robot_to_dict(structure: RobotStructure) -> dict:
    return {
        "name": structure.name,
        "kind": structure.kind,
        "anchors": [
            {"label": a.label, "frame": a.frame, "xyz": list(a.xyz)}
            for a in structure.anchors
        ],
        "legs": [list(leg) for leg in structure.legs],
    }


def loads_robot(text: str) -> RobotStructure:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise InvalidInputError(f"not valid JSON: {err}") from err
    return robot_from_dict(data)


def dumps_robot(structure: RobotStructure) -> str:
    return json.dumps(robot_to_dict(structure), indent=2) + "\n"


def load_robot(path) -> RobotStructure:
    return loads_robot(Path(path).read_text())


def save_robot(structure: RobotStructure, path) -> None:
    Path(path).write_text(dumps_robot(structure))
