"""Numeric side: bracket evaluation, rigid poses, closeness-to-singularity.

Brackets evaluate as 4x4 determinants of homogeneous point rows, so a
superbracket polynomial evaluated on actual coordinates equals the direct
kinematics Jacobian determinant up to a fixed constant.  Proximity checks
turn each identified entity condition into the spectral condition number of
a small matrix; rank deficiency reports as ``inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .brackets import BracketPolynomial, InvalidInputError, Label
from .entities import (
    KIND_LINE,
    KIND_PLANE,
    KIND_TETRAHEDRON,
    SingularityCondition,
)

DEFAULT_EPSILON = 1e-6
# condition numbers above this are treated as "close to singular" by consumers
CONDITION_NUMBER_THRESHOLD = 1e8
# sigma_min <= ratio * sigma_max counts as rank deficient
_RANK_RATIO = 1e-12

QUATERNION_NORM_TOL = 1e-9


class DegenerateGeometryError(ValueError):
    """The numeric configuration does not define the requested object."""


def _vec3(p: Sequence[float]) -> np.ndarray:
    v = np.asarray(p, dtype=float)
    if v.shape != (3,):
        raise InvalidInputError(f"expected a 3-vector, got shape {v.shape}")
    return v


@dataclass(frozen=True)
class Pose:
    """Rigid displacement: rotation (unit quaternion, w first) + translation."""

    translation: tuple[float, float, float]
    quaternion: tuple[float, float, float, float]

    def __post_init__(self):
        t = tuple(float(v) for v in self.translation)
        q = tuple(float(v) for v in self.quaternion)
        if len(t) != 3 or len(q) != 4:
            raise InvalidInputError("pose takes 3 translation and 4 quaternion values")
        n = math.sqrt(sum(v * v for v in q))
        if abs(n - 1.0) > QUATERNION_NORM_TOL:
            raise InvalidInputError(f"quaternion norm {n!r} is not 1 within {QUATERNION_NORM_TOL}")
        object.__setattr__(self, "translation", t)
        object.__setattr__(self, "quaternion", tuple(v / n for v in q))

    @classmethod
    def identity(cls) -> "Pose":
        return cls((0.0, 0.0, 0.0), (1.0, 0.0, 0.0, 0.0))

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "Pose":
        vals = [float(v) for v in values]
        if len(vals) != 7:
            raise InvalidInputError("a pose is tx,ty,tz,qw,qx,qy,qz (7 values)")
        return cls(tuple(vals[:3]), tuple(vals[3:]))

    def rotation(self) -> np.ndarray:
        w, x, y, z = self.quaternion
        return np.array(
            [
                [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
                [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
                [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
            ]
        )

    def apply(self, point: Sequence[float]) -> np.ndarray:
        return self.rotation() @ _vec3(point) + np.asarray(self.translation)


def bracket_value(a, b, c, d) -> float:
    """Determinant of the homogeneous 4x4 matrix of four points.

    Equals six times the signed tetrahedron volume; zero iff coplanar.
    """
    m = np.ones((4, 4))
    m[:, :3] = [_vec3(p) for p in (a, b, c, d)]
    return float(np.linalg.det(m))


def evaluate_polynomial(p: BracketPolynomial, coords: Mapping[Label, Sequence[float]]) -> float:
    """Evaluate each bracket on the coordinate assignment and sum monomials."""
    pts = {}
    for label in p.labels():
        if label not in coords:
            raise InvalidInputError(f"no coordinates for label {label!r}")
        pts[label] = _vec3(coords[label])
    total = 0.0
    for coeff, key in p.monomials():
        term = float(coeff)
        for br in key:
            term *= bracket_value(*(pts[l] for l in br))
        total += term
    return total


def polynomial_degree(p: BracketPolynomial) -> int:
    """Homogeneity degree under point scaling (3 per bracket)."""
    if not p.monomials():
        return 0
    return 3 * max(len(key) for _, key in p.monomials())


def scale_length(coords: Mapping[Label, Sequence[float]]) -> float:
    """Largest pairwise distance in the coordinate assignment."""
    pts = [_vec3(v) for v in coords.values()]
    best = 0.0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            best = max(best, float(np.linalg.norm(pts[i] - pts[j])))
    return best


def normalized_measure(p: BracketPolynomial, coords: Mapping[Label, Sequence[float]]) -> tuple[float, float]:
    """(raw value, scale-free magnitude |raw| / L^degree)."""
    raw = evaluate_polynomial(p, coords)
    degree = polynomial_degree(p)
    if degree == 0:
        return raw, abs(raw)
    length = scale_length(coords)
    if length <= 0.0:
        raise DegenerateGeometryError("all points coincide; no length scale")
    return raw, abs(raw) / length**degree


def jacobian_oracle(legs: Iterable[Sequence[Label]], coords: Mapping[Label, Sequence[float]]) -> float:
    """Determinant of the 6x6 matrix of leg line coordinates.

    Each leg contributes (direction, moment) with direction = second point
    minus first and moment = first x direction.  Independent of the symbolic
    pipeline, so it serves as a ground truth for superbracket evaluations.
    """
    rows = []
    for leg in legs:
        u, v = leg
        pu, pv = _vec3(coords[u]), _vec3(coords[v])
        d = pv - pu
        scale = max(1.0, float(np.linalg.norm(pu)), float(np.linalg.norm(pv)))
        if float(np.linalg.norm(d)) <= 1e-12 * scale:
            raise DegenerateGeometryError(f"leg ({u}, {v}) has coincident endpoints")
        rows.append(np.concatenate([d, np.cross(pu, d)]))
    m = np.vstack(rows)
    if m.shape != (6, 6):
        raise InvalidInputError(f"need six legs, got {m.shape[0]}")
    return float(np.linalg.det(m))


# ---------------------------------------------------------------------------
# entity proximity checks


def condition_number(matrix: np.ndarray) -> float:
    """Spectral condition number; ``inf`` when rank deficient."""
    s = np.linalg.svd(np.asarray(matrix, dtype=float), compute_uv=False)
    smax, smin = float(s[0]), float(s[-1])
    if smax == 0.0 or smin <= _RANK_RATIO * smax:
        return math.inf
    return smax / smin


def _homogeneous(points: Iterable[Sequence[float]]) -> np.ndarray:
    pts = [_vec3(p) for p in points]
    m = np.ones((len(pts), 4))
    m[:, :3] = pts
    return m


def check_tetrahedron(a, b, c, d) -> float:
    """Condition number of the homogeneous point matrix; inf iff coplanar."""
    return condition_number(_homogeneous([a, b, c, d]))


def plane_coeffs(a, b, c) -> np.ndarray:
    """Plane through three points as (nx, ny, nz, d) with n.p + d = 0."""
    a, b, c = _vec3(a), _vec3(b), _vec3(c)
    n = np.cross(b - a, c - a)
    scale = float(np.linalg.norm(b - a)) * float(np.linalg.norm(c - a))
    if float(np.linalg.norm(n)) <= 1e-12 * max(scale, 1e-30):
        raise DegenerateGeometryError("plane points are (nearly) collinear")
    return np.concatenate([n, [-float(n @ a)]])


def check_four_planes(p1, p2, p3, p4) -> float:
    """Condition number of the stacked normalized plane rows.

    The four planes share a point iff the 4x4 coefficient matrix is rank
    deficient, which reports as inf.
    """
    rows = []
    for c in (p1, p2, p3, p4):
        c = np.asarray(c, dtype=float)
        if c.shape != (4,):
            raise InvalidInputError("a plane is 4 coefficients")
        norm = float(np.linalg.norm(c[:3]))
        if norm == 0.0:
            raise DegenerateGeometryError("zero plane normal")
        rows.append(c / norm)
    return condition_number(np.vstack(rows))


def check_planes_and_line(plane1, plane2, a, b) -> float:
    """Closeness of line (a, b) to the intersection line of two planes.

    Builds two points spanning the intersection line and takes the condition
    number of the homogeneous matrix of all four points: the lines meet (or
    are parallel in a common plane) iff it drops rank.
    """
    c1, c2 = np.asarray(plane1, dtype=float), np.asarray(plane2, dtype=float)
    n1, n2 = c1[:3], c2[:3]
    u = np.cross(n1, n2)
    norm_u = float(np.linalg.norm(u))
    if norm_u <= 1e-12 * float(np.linalg.norm(n1)) * float(np.linalg.norm(n2)):
        raise DegenerateGeometryError("planes are (nearly) parallel; no intersection line")
    a, b = _vec3(a), _vec3(b)
    if float(np.linalg.norm(b - a)) == 0.0:
        raise DegenerateGeometryError("line endpoints coincide")
    # minimum-norm point on the intersection line
    A = np.vstack([n1, n2])
    rhs = np.array([-c1[3], -c2[3]])
    x0 = np.linalg.lstsq(A, rhs, rcond=None)[0]
    x1 = x0 + u / norm_u
    return condition_number(_homogeneous([x0, x1, a, b]))


def check_lines_intersect(a, b, c, d) -> float:
    """Lines (a, b) and (c, d) meet iff their four points are coplanar."""
    return check_tetrahedron(a, b, c, d)


@dataclass(frozen=True)
class ConditionCheck:
    name: str
    condition_number: float

    def to_dict(self) -> dict:
        finite = math.isfinite(self.condition_number)
        return {
            "name": self.name,
            "condition_number": self.condition_number if finite else None,
            "infinite": not finite,
        }


def _entity_points(entity, coords):
    return [coords[l] for l in entity.labels]


def condition_checks(
    condition: SingularityCondition | None, coords: Mapping[Label, Sequence[float]]
) -> tuple[ConditionCheck, ...]:
    """One numeric proximity check per clause of the identified condition.

    Degenerate sub-geometry (collinear plane points, parallel planes) counts
    as incident, i.e. condition number inf.
    """
    if condition is None or condition.group not in {"b", "c", "d", "e", "f", "g"}:
        return ()
    tets = [e for e in condition.entities if e.kind == KIND_TETRAHEDRON]
    planes = [e for e in condition.entities if e.kind == KIND_PLANE]
    lines = [e for e in condition.entities if e.kind == KIND_LINE]

    def run(name, fn, *args):
        try:
            value = fn(*args)
        except DegenerateGeometryError:
            value = math.inf
        return ConditionCheck(name, value)

    def label_str(e):
        return ",".join(e.labels)

    checks = []
    for t in tets:
        checks.append(run(f"tetrahedron[{label_str(t)}]", check_tetrahedron, *_entity_points(t, coords)))
    group = condition.group
    if group == "c":
        name = "four_planes[" + ";".join(label_str(e) for e in planes) + "]"
        checks.append(
            run(
                name,
                lambda *pts: check_four_planes(
                    *(plane_coeffs(*_entity_points(e, coords)) for e in planes)
                ),
            )
        )
    elif group in {"b", "d"}:
        incidence = lines[0]
        name = (
            f"planes_line[{label_str(planes[0])};{label_str(planes[1])};{label_str(incidence)}]"
        )

        def _planes_line():
            c1 = plane_coeffs(*_entity_points(planes[0], coords))
            c2 = plane_coeffs(*_entity_points(planes[1], coords))
            return check_planes_and_line(c1, c2, *_entity_points(incidence, coords))

        checks.append(run(name, _planes_line))
        if group == "b":
            l2, l3 = lines[1], lines[2]
            checks.append(
                run(
                    f"lines_intersect[{label_str(l2)};{label_str(l3)}]",
                    check_lines_intersect,
                    *_entity_points(l2, coords),
                    *_entity_points(l3, coords),
                )
            )
    elif group == "e":
        for la, lb in ((lines[0], lines[1]), (lines[2], lines[3])):
            checks.append(
                run(
                    f"lines_intersect[{label_str(la)};{label_str(lb)}]",
                    check_lines_intersect,
                    *_entity_points(la, coords),
                    *_entity_points(lb, coords),
                )
            )
    elif group == "f":
        checks.append(
            run(
                f"lines_intersect[{label_str(lines[0])};{label_str(lines[1])}]",
                check_lines_intersect,
                *_entity_points(lines[0], coords),
                *_entity_points(lines[1], coords),
            )
        )
    return tuple(checks)


@dataclass(frozen=True)
class SingularityReport:
    """Numeric closeness-to-singularity summary at one pose."""

    raw_value: float
    normalized_measure: float
    epsilon: float
    near_singular: bool
    checks: tuple[ConditionCheck, ...] = ()

    def to_dict(self) -> dict:
        return {
            "raw_value": self.raw_value,
            "normalized_measure": self.normalized_measure,
            "epsilon": self.epsilon,
            "near_singular": self.near_singular,
            "checks": [c.to_dict() for c in self.checks],
            "display": {
                "raw_value": repr(self.raw_value),
                "normalized_measure": repr(self.normalized_measure),
                "epsilon": repr(self.epsilon),
            },
        }


def singularity_report(
    p: BracketPolynomial,
    coords: Mapping[Label, Sequence[float]],
    epsilon: float = DEFAULT_EPSILON,
    condition: SingularityCondition | None = None,
) -> SingularityReport:
    """Evaluate p at the coordinates and flag near-singularity.

    ``near_singular`` compares the scale-free magnitude against epsilon.
    When an identified condition is given, per-entity proximity checks are
    attached.
    """
    if not epsilon > 0:
        raise InvalidInputError(f"epsilon must be positive, got {epsilon!r}")
    raw, normalized = normalized_measure(p, coords)
    checks = condition_checks(condition, coords)
    return SingularityReport(raw, normalized, float(epsilon), normalized < epsilon, checks)
