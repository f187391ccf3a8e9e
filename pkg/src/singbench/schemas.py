"""Wire schemas for the HTTP service.

Request models stay permissive on semantic fields (kind, frames, leg labels)
so the structure validator can return its full violation list as a 400
instead of a generic 422; shape errors still fail fast at the schema level.
"""

from __future__ import annotations

import math
from typing import Optional

from pydantic import BaseModel, Field, field_validator

from .geometry import QUATERNION_NORM_TOL


class AnchorIn(BaseModel):
    label: str
    frame: str
    xyz: tuple[float, float, float]


class RobotIn(BaseModel):
    """A robot structure document, same shape as the on-disk JSON."""

    name: str
    kind: str
    anchors: list[AnchorIn]
    legs: list[tuple[str, str]]


class PoseIn(BaseModel):
    translation: tuple[float, float, float]
    quaternion: tuple[float, float, float, float] = Field(
        description="unit quaternion, scalar part first"
    )
    epsilon: Optional[float] = Field(default=None, gt=0)
    session: Optional[int] = None

    @field_validator("quaternion")
    @classmethod
    def _unit_norm(cls, q):
        n = math.sqrt(sum(v * v for v in q))
        if abs(n - 1.0) > QUATERNION_NORM_TOL:
            raise ValueError(f"quaternion norm {n} is not 1 within {QUATERNION_NORM_TOL}")
        return q


class PoseOut(BaseModel):
    translation: list[float]
    quaternion: list[float]


class EntityOut(BaseModel):
    kind: str
    labels: list[str]
    starred: bool


class ConditionOut(BaseModel):
    group: str
    statement: str
    verified: str
    residual: list[str]
    entities: list[EntityOut]


class StructureClassOut(BaseModel):
    name: str
    base_points: int
    platform_points: int


class MonomialOut(BaseModel):
    coefficient: int
    brackets: list[list[str]]


class AutoReduceOut(BaseModel):
    suggested: bool
    applied: bool


class AnalysisOut(BaseModel):
    session: int
    name: str
    kind: str
    structure_class: StructureClassOut
    leg_order: list[list[str]]
    auto_reduce: AutoReduceOut
    monomial_count: int
    polynomial: str
    monomials: list[MonomialOut]
    condition: ConditionOut
    stages: list[str]


class CheckOut(BaseModel):
    name: str
    condition_number: Optional[float]
    infinite: bool


class DisplayOut(BaseModel):
    """Server-formatted value strings, shown verbatim by clients."""

    raw_value: str
    normalized_measure: str
    epsilon: str


class ReportOut(BaseModel):
    session: int
    pose: PoseOut
    raw_value: float
    normalized_measure: float
    epsilon: float
    near_singular: bool
    checks: list[CheckOut]
    display: DisplayOut


class AnchorWorldOut(BaseModel):
    label: str
    frame: str
    world: list[float]


class EntityPointsOut(BaseModel):
    kind: str
    labels: list[str]
    starred: bool
    points: dict[str, list[float]]


class EntitiesOut(BaseModel):
    session: int
    pose: PoseOut
    anchors: list[AnchorWorldOut]
    legs: list[list[str]]
    condition: ConditionOut
    entities: list[EntityPointsOut]


class ConditionStateOut(BaseModel):
    session: int
    name: str
    structure_class: StructureClassOut
    monomial_count: int
    polynomial: str
    condition: ConditionOut
