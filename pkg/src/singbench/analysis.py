"""End-to-end analysis of a robot structure.

Ties the pieces together: validate the structure, expand the superbracket
over its legs, optionally search leg orders for the shortest form, identify
the geometric singularity condition, and evaluate poses numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .brackets import BracketPolynomial, InvalidInputError
from .entities import ManualEntities, SingularityCondition, identify
from .geometry import (
    DEFAULT_EPSILON,
    Pose,
    SingularityReport,
    singularity_report,
)
from .robot import (
    RobotStructure,
    StructureClass,
    classify_structure,
    coordinates_at,
    validate,
)
from .superbracket import (
    LegOrder,
    expand_superbracket,
    monomial_count,
    shortest_form_search,
    suggest_auto_reduce,
)


class StructureValidationError(InvalidInputError):
    """Raised with the full list of schema violations."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


@dataclass(frozen=True)
class AnalysisResult:
    structure: RobotStructure
    structure_class: StructureClass
    leg_order: LegOrder
    polynomial: BracketPolynomial
    condition: SingularityCondition
    auto_reduce_suggested: bool
    auto_reduce_applied: bool
    stages: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "name": self.structure.name,
            "kind": self.structure.kind,
            "structure_class": {
                "name": self.structure_class.name,
                "base_points": self.structure_class.base_points,
                "platform_points": self.structure_class.platform_points,
            },
            "leg_order": [list(leg) for leg in self.leg_order],
            "auto_reduce": {
                "suggested": self.auto_reduce_suggested,
                "applied": self.auto_reduce_applied,
            },
            "monomial_count": monomial_count(self.polynomial),
            "polynomial": str(self.polynomial),
            "monomials": [
                {"coefficient": coeff, "brackets": [list(br) for br in key]}
                for coeff, key in self.polynomial.monomials()
            ],
            "condition": condition_to_dict(self.condition),
            "stages": list(self.stages),
        }


def condition_to_dict(condition: SingularityCondition) -> dict:
    return {
        "group": condition.group,
        "statement": condition.statement,
        "verified": condition.verified,
        "residual": list(condition.residual),
        "entities": [
            {"kind": e.kind, "labels": list(e.labels), "starred": e.starred}
            for e in condition.entities
        ],
    }


def analyze_structure(
    structure: RobotStructure,
    *,
    auto_reduce: bool = False,
    manual: ManualEntities | None = None,
) -> AnalysisResult:
    """Full symbolic pass over one structure.

    The leg-order search runs when requested or when the file-order
    expansion is long enough that a shorter form is worth looking for.
    """
    problems = validate(structure)
    if problems:
        raise StructureValidationError(problems)
    cls = classify_structure(structure)
    stages = [f"validated structure '{structure.name}' ({structure.kind}, class {cls.name})"]

    order: LegOrder = tuple(structure.legs)  # type: ignore[assignment]
    p = expand_superbracket(order)
    stages.append(
        f"expanded superbracket over the file leg order: {monomial_count(p)} monomials"
    )
    suggested = suggest_auto_reduce(p)
    if suggested:
        stages.append("long form: a leg-order search is suggested")
    applied = False
    if auto_reduce or suggested:
        best_order, best = shortest_form_search(order)
        applied = True
        if monomial_count(best) < monomial_count(p):
            order, p = best_order, best
            stages.append(
                f"searched all 720 leg orders: shortest form has {monomial_count(p)} monomials"
            )
        else:
            stages.append(
                "searched all 720 leg orders: the file order is already shortest"
            )

    if manual is not None:
        stages.append("using manually asserted entities; scan stages skipped")
    condition = identify(p, manual)
    stages.append(
        f"identified condition group '{condition.group}' ({condition.verified})"
    )
    stages.append(f"reduced polynomial: {p}")
    return AnalysisResult(
        structure, cls, order, p, condition, suggested, applied, tuple(stages)
    )


def evaluate_structure(
    structure: RobotStructure,
    pose: Pose,
    epsilon: float = DEFAULT_EPSILON,
    analysis: AnalysisResult | None = None,
) -> SingularityReport:
    """Numeric singularity report for one pose."""
    if analysis is None:
        analysis = analyze_structure(structure)
    coords = coordinates_at(structure, pose)
    return singularity_report(analysis.polynomial, coords, epsilon, analysis.condition)


def pose_to_dict(pose: Pose) -> dict:
    return {"translation": list(pose.translation), "quaternion": list(pose.quaternion)}


def report_to_dict(report: SingularityReport, pose: Pose) -> dict:
    out = report.to_dict()
    out["pose"] = pose_to_dict(pose)
    return out


def entities_view(
    structure: RobotStructure, analysis: AnalysisResult, pose: Pose
) -> dict:
    """World-space snapshot of anchors, legs and identified entities."""
    coords = coordinates_at(structure, pose)

    def world(label):
        return [float(v) for v in coords[label]]

    amap = structure.anchor_map()
    return {
        "pose": pose_to_dict(pose),
        "anchors": [
            {"label": a.label, "frame": a.frame, "world": world(a.label)}
            for a in structure.anchors
        ],
        "legs": [list(leg) for leg in analysis.leg_order],
        "condition": condition_to_dict(analysis.condition),
        "entities": [
            {
                "kind": e.kind,
                "labels": list(e.labels),
                "starred": e.starred,
                "points": {l: world(l) for l in e.labels if l in amap},
            }
            for e in analysis.condition.entities
        ],
    }
