"""Geometric entity identification on reduced superbracket polynomials.

A reduced polynomial is scanned in stages for the point sets that make it up:

1. brackets common to every monomial are tetrahedra;
2. point triples that sit together in one bracket of every monomial and pass
   the pairwise interchange test are planes;
3. plane members are re-labeled with a ``*`` marker inside their identifying
   bracket, so later stages treat each plane occurrence as its own entity;
4. pairs of remaining plain labels that pass the interchange test are lines;
5. leftover labels are resolved by promotion rules (a leftover triangle is a
   plane candidate, and so on).

The resulting entity multiset is matched against the known condition groups
(a through g) and the candidate condition is re-verified by rebuilding the
meet/product expression and comparing it to the input polynomial.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .brackets import (
    Bracket,
    BracketPolynomial,
    Extensor,
    InvalidInputError,
    Label,
    meet,
    meet_all,
    normalize_bracket,
    swap_interchange_test,
)

STAR = "*"

KIND_LINE = "line"
KIND_PLANE = "plane"
KIND_TETRAHEDRON = "tetrahedron"

_KIND_SIZE = {KIND_LINE: 2, KIND_PLANE: 3, KIND_TETRAHEDRON: 4}
_KIND_RANK = {KIND_TETRAHEDRON: 0, KIND_PLANE: 1, KIND_LINE: 2}

# group -> (tetrahedra, planes, lines)
GROUP_LAYOUTS: dict[str, tuple[int, int, int]] = {
    "a": (0, 0, 6),
    "b": (0, 2, 3),
    "c": (0, 4, 0),
    "d": (1, 2, 1),
    "e": (1, 0, 4),
    "f": (2, 0, 2),
    "g": (3, 0, 0),
}

VERIFIED = "verified"
NOT_VERIFIED = "not-verified"
NOT_ATTEMPTED = "not-attempted"


class AmbiguousStarError(InvalidInputError):
    """A plane has more than one hosting bracket in some monomial."""


@dataclass(frozen=True)
class GeometricEntity:
    """A line, plane or tetrahedron given by its plain point labels."""

    kind: str
    labels: tuple[Label, ...]
    starred: bool = False

    def __post_init__(self):
        if self.kind not in _KIND_SIZE:
            raise InvalidInputError(f"unknown entity kind {self.kind!r}")
        labels = tuple(sorted(self.labels))
        object.__setattr__(self, "labels", labels)
        if len(labels) != _KIND_SIZE[self.kind] or len(set(labels)) != len(labels):
            raise InvalidInputError(
                f"a {self.kind} needs {_KIND_SIZE[self.kind]} distinct labels, got {self.labels!r}"
            )

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.labels)


@dataclass(frozen=True)
class SingularityCondition:
    """Outcome of entity identification on one polynomial."""

    group: str
    entities: tuple[GeometricEntity, ...]
    residual: tuple[Label, ...]
    statement: str
    verified: str = NOT_ATTEMPTED


def _plain(label: Label) -> Label:
    return label.rstrip(STAR)


def strip_stars(p: BracketPolynomial) -> BracketPolynomial:
    """Drop all ``*`` markers; brackets renormalize, repeats vanish."""
    return p.substitute({l: _plain(l) for l in p.labels()})


# ---------------------------------------------------------------------------
# stage 1: tetrahedra


def _divide_out(p: BracketPolynomial, bracket: Bracket) -> BracketPolynomial | None:
    """Exact division by one bracket, or None when a monomial lacks it."""
    out = []
    for coeff, key in p.monomials():
        if bracket not in key:
            return None
        pos = key.index(bracket)
        out.append((coeff, key[:pos] + key[pos + 1:]))
    return BracketPolynomial(out, combine=False)


def find_tetrahedra(p: BracketPolynomial) -> tuple[list[GeometricEntity], BracketPolynomial]:
    """Factor out brackets common to every monomial.

    Returns the tetrahedron entities (one per factored bracket, smallest
    label set first) and the remaining polynomial.  A single-monomial input
    yields all of its brackets, leaving a constant remainder.
    """
    rem = p.combined()
    found: list[GeometricEntity] = []
    while True:
        monos = rem.monomials()
        if not monos:
            break
        common: Counter | None = None
        for _, key in monos:
            c = Counter(key)
            common = c if common is None else (common & c)
            if not common:
                break
        if not common:
            break
        bracket = min(common)
        divided = _divide_out(rem, bracket)
        assert divided is not None
        rem = divided
        found.append(GeometricEntity(KIND_TETRAHEDRON, bracket))
    found.sort(key=GeometricEntity.sort_key)
    return found, rem


# ---------------------------------------------------------------------------
# stage 2: planes


def find_planes(p: BracketPolynomial) -> list[GeometricEntity]:
    """Triples co-resident in one bracket of every monomial, filtered by
    pairwise interchangeability."""
    p = p.combined()
    monos = p.monomials()
    if not monos:
        return []
    shared: set[tuple[Label, ...]] | None = None
    for _, key in monos:
        triples = {
            t for br in key for t in itertools.combinations(br, 3)
        }
        shared = triples if shared is None else (shared & triples)
        if not shared:
            return []
    planes = []
    for triple in sorted(shared or ()):
        x, y, z = triple
        if (
            swap_interchange_test(p, x, y)
            and swap_interchange_test(p, x, z)
            and swap_interchange_test(p, y, z)
        ):
            planes.append(GeometricEntity(KIND_PLANE, triple))
    return planes


# ---------------------------------------------------------------------------
# stage 3: star re-labeling


def _alias_maps(planes: Sequence[GeometricEntity]) -> list[dict[Label, Label]]:
    """Per-plane label aliases; labels shared between planes get distinct
    star counts so each plane keeps its own copy of the point."""
    counts = Counter(l for pl in planes for l in pl.labels)
    used: dict[Label, int] = {}
    maps = []
    for pl in planes:
        m = {}
        for l in pl.labels:
            if counts[l] > 1:
                used[l] = used.get(l, 0) + 1
                m[l] = l + STAR * used[l]
            else:
                m[l] = l + STAR
        maps.append(m)
    return maps


def _star_relabel_detailed(
    p: BracketPolynomial, planes: Sequence[GeometricEntity]
) -> tuple[BracketPolynomial, list[dict[Label, Label]], list[bool]]:
    """Star plane members inside their identifying brackets.

    Returns the re-labeled polynomial, the alias map per plane, and a flag
    per plane telling whether every monomial had a hosting bracket.  More
    than one hosting bracket in a monomial is ambiguous and raises.
    """
    p = p.combined()
    ordered = sorted(planes, key=GeometricEntity.sort_key)
    maps = _alias_maps(ordered)
    full = [True] * len(ordered)
    out = []
    for coeff, key in p.monomials():
        brs = [list(br) for br in key]
        for pi, (pl, amap) in enumerate(zip(ordered, maps)):
            members = set(pl.labels)
            hits = [i for i, br in enumerate(brs) if members <= set(br)]
            if not hits:
                full[pi] = False
                continue
            if len(hits) > 1:
                raise AmbiguousStarError(
                    f"plane {pl.labels} occurs in {len(hits)} brackets of one monomial"
                )
            brs[hits[0]] = [amap.get(x, x) for x in brs[hits[0]]]
        out.append((coeff, [tuple(b) for b in brs]))
    starred = BracketPolynomial.from_monomials(out)
    return starred, maps, full


def star_relabel(p: BracketPolynomial, planes: Sequence[GeometricEntity]) -> BracketPolynomial:
    """Re-label plane members with ``*`` markers inside hosting brackets."""
    starred, _, _ = _star_relabel_detailed(p, planes)
    return starred


# ---------------------------------------------------------------------------
# stage 4: line pairs


def find_line_pairs(
    p: BracketPolynomial,
) -> tuple[list[GeometricEntity], tuple[Label, ...]]:
    """Interchangeable pairs among plain (unstarred) labels.

    Only disjoint passing pairs count as lines; labels tangled in several
    passing pairs, or in none, are returned as leftovers.
    """
    p = p.combined()
    plain = sorted(l for l in p.labels() if not l.endswith(STAR))
    passing = [
        (x, y)
        for x, y in itertools.combinations(plain, 2)
        if swap_interchange_test(p, x, y)
    ]
    degree = Counter(l for pair in passing for l in pair)
    lines = [
        GeometricEntity(KIND_LINE, pair)
        for pair in passing
        if degree[pair[0]] == 1 and degree[pair[1]] == 1
    ]
    in_lines = {l for e in lines for l in e.labels}
    leftover = tuple(l for l in plain if l not in in_lines)
    return lines, leftover


# ---------------------------------------------------------------------------
# stage 5: residual resolution + group matching


def _split(entities: Iterable[GeometricEntity]):
    tets = [e for e in entities if e.kind == KIND_TETRAHEDRON]
    planes = [e for e in entities if e.kind == KIND_PLANE]
    lines = [e for e in entities if e.kind == KIND_LINE]
    return tets, planes, lines


def _match_group(entities: Sequence[GeometricEntity], residual: Sequence[Label]) -> str | None:
    if residual:
        return None
    tets, planes, lines = _split(entities)
    counts = (len(tets), len(planes), len(lines))
    for group, layout in GROUP_LAYOUTS.items():
        if counts == layout:
            return group
    return None


def _resolve_residual(
    entities: tuple[GeometricEntity, ...],
    residual: tuple[Label, ...],
    triangle: bool = True,
) -> list[tuple[tuple[GeometricEntity, ...], tuple[Label, ...]]]:
    """Candidate readings of the leftovers, the as-found one first.

    ``triangle`` gates the three-leftover plane promotion (the caller may
    know whether the triple passed pairwise interchange tests).
    """
    variants = [(entities, residual)]
    res = tuple(sorted(residual))
    tets, planes, lines = _split(entities)
    if len(res) == 3 and len(set(res)) == 3 and triangle:
        variants.append((entities + (GeometricEntity(KIND_PLANE, res),), ()))
    if len(planes) == 3 and len(lines) == 1 and len(res) == 1:
        merged = GeometricEntity(KIND_PLANE, lines[0].labels + res)
        rest = tuple(e for e in entities if e is not lines[0])
        variants.append((rest + (merged,), ()))
    if len(planes) == 2 and len(lines) == 1 and len(res) == 4:
        w, x, y, z = res
        for pairing in (((w, x), (y, z)), ((w, y), (x, z)), ((w, z), (x, y))):
            extra = tuple(GeometricEntity(KIND_LINE, pair) for pair in pairing)
            variants.append((entities + extra, ()))
    return variants


def _fmt(labels: Iterable[Label]) -> str:
    return "{" + ", ".join(labels) + "}"


def _statement(group: str, entities: Sequence[GeometricEntity], residual: Sequence[Label]) -> str:
    tets, planes, lines = _split(entities)
    t = [_fmt(e.labels) for e in tets]
    pl = [_fmt(e.labels) for e in planes]
    ln = [_fmt(e.labels) for e in lines]
    if group == "a":
        return "no special singularity condition: the six lines form a general linear complex"
    if group == "b":
        return (
            f"singular iff line {ln[0]} crosses the intersection line of planes "
            f"{pl[0]} and {pl[1]}, or lines {ln[1]} and {ln[2]} intersect"
        )
    if group == "c":
        return "singular iff the four planes meet at a point: " + ", ".join(pl)
    if group == "d":
        return (
            f"singular iff tetrahedron {t[0]} is coplanar or line {ln[0]} crosses "
            f"the intersection line of planes {pl[0]} and {pl[1]}"
        )
    if group == "e":
        return (
            f"singular iff tetrahedron {t[0]} is coplanar, or lines {ln[0]} and "
            f"{ln[1]} intersect, or lines {ln[2]} and {ln[3]} intersect"
        )
    if group == "f":
        return (
            f"singular iff at least one tetrahedron coplanar ({t[0]} or {t[1]}), "
            f"or lines {ln[0]} and {ln[1]} intersect"
        )
    if group == "g":
        return "singular iff at least one tetrahedron coplanar: " + ", ".join(t)
    parts = []
    if entities:
        parts.append(
            "entities " + ", ".join(f"{e.kind} {_fmt(e.labels)}" for e in entities)
        )
    if residual:
        parts.append("residual labels " + _fmt(residual))
    detail = "; ".join(parts) if parts else "no entities found"
    return f"no condition group matched ({detail})"


def _ordered(entities: Iterable[GeometricEntity]) -> tuple[GeometricEntity, ...]:
    return tuple(sorted(entities, key=GeometricEntity.sort_key))


def _make_condition(
    group: str,
    entities: Sequence[GeometricEntity],
    residual: Sequence[Label],
    verified: str = NOT_ATTEMPTED,
) -> SingularityCondition:
    ents = tuple(entities)
    res = tuple(sorted(residual))
    return SingularityCondition(group, ents, res, _statement(group, ents, res), verified)


def classify(
    entities: Sequence[GeometricEntity], residual: Sequence[Label]
) -> SingularityCondition:
    """Match the entity multiset to a condition group.

    Residual labels are first run through the promotion rules; the first
    reading that lands in a group wins.  No verification is attempted here.
    """
    base = _ordered(entities)
    for ents, res in _resolve_residual(base, tuple(sorted(residual))):
        group = _match_group(ents, res)
        if group is not None:
            return _make_condition(group, _ordered(ents), res)
    return _make_condition("none", base, residual)


# ---------------------------------------------------------------------------
# verification


def _expr_extensor(labels: Sequence[Label], amap: Mapping[Label, Label] | None = None) -> Extensor:
    names = [amap.get(l, l) if amap else l for l in labels]
    return Extensor.from_labels(names)


def _verify(
    condition: SingularityCondition, p: BracketPolynomial
) -> tuple[str, tuple[GeometricEntity, ...] | None]:
    group = condition.group
    if group not in GROUP_LAYOUTS or group == "a":
        return NOT_ATTEMPTED, None
    p = p.combined()
    if p.is_zero():
        return NOT_VERIFIED, None
    tets, planes, lines = _split(condition.entities)

    # tetrahedron brackets divide the polynomial exactly
    rem = p
    for t in tets:
        sign, br = normalize_bracket(t.labels)
        if sign == 0:
            return NOT_VERIFIED, None
        divided = _divide_out(rem, br)
        if divided is None:
            return NOT_VERIFIED, None
        rem = divided

    starred = sorted((e for e in planes if e.starred), key=GeometricEntity.sort_key)
    plane_aliases: dict[GeometricEntity, dict[Label, Label]] = {}
    if starred:
        try:
            rem, maps, _ = _star_relabel_detailed(rem, starred)
        except AmbiguousStarError:
            return NOT_VERIFIED, None
        plane_aliases = dict(zip(starred, maps))

    def plane_ext(e: GeometricEntity) -> Extensor:
        return _expr_extensor(e.labels, plane_aliases.get(e))

    def line_ext(e: GeometricEntity) -> Extensor:
        return _expr_extensor(e.labels)

    def matches(expr) -> bool:
        return isinstance(expr, BracketPolynomial) and rem.equals_up_to_sign(expr)

    if group == "g":
        if rem.equals_up_to_sign(BracketPolynomial.unit(1)):
            return VERIFIED, _ordered(condition.entities)
        return NOT_VERIFIED, None

    if group == "c":
        for perm in itertools.permutations(planes):
            expr = meet_all(*[plane_ext(e) for e in perm])
            if matches(expr):
                return VERIFIED, tuple(perm)
        return NOT_VERIFIED, None

    if group == "d":
        for pa, pb in itertools.permutations(planes):
            expr = meet(meet(plane_ext(pa), plane_ext(pb)), line_ext(lines[0]))
            if matches(expr):
                return VERIFIED, tuple(tets) + (pa, pb) + tuple(lines)
        return NOT_VERIFIED, None

    if group == "b":
        for i, incidence in enumerate(lines):
            others = [e for j, e in enumerate(lines) if j != i]
            cross = meet(line_ext(others[0]), line_ext(others[1]))
            for pa, pb in itertools.permutations(planes):
                near = meet(meet(plane_ext(pa), plane_ext(pb)), line_ext(incidence))
                if matches(near * cross):
                    return VERIFIED, (pa, pb, incidence) + tuple(others)
        return NOT_VERIFIED, None

    if group == "e":
        l1, l2, l3, l4 = lines
        for pairing in (((l1, l2), (l3, l4)), ((l1, l3), (l2, l4)), ((l1, l4), (l2, l3))):
            (a, b), (c, d) = pairing
            expr = meet(line_ext(a), line_ext(b)) * meet(line_ext(c), line_ext(d))
            if matches(expr):
                return VERIFIED, tuple(tets) + (a, b, c, d)
        return NOT_VERIFIED, None

    if group == "f":
        expr = meet(line_ext(lines[0]), line_ext(lines[1]))
        if matches(expr):
            return VERIFIED, tuple(tets) + tuple(lines)
        return NOT_VERIFIED, None

    return NOT_ATTEMPTED, None


def verify_condition(condition: SingularityCondition, p: BracketPolynomial) -> str:
    """Rebuild the candidate meet/product expression for the condition's
    group and compare it to p up to one global sign."""
    status, _ = _verify(condition, p)
    return status


# ---------------------------------------------------------------------------
# manual entities + the full pipeline


@dataclass(frozen=True)
class ManualEntities:
    """User-asserted entities that replace the automatic scan stages."""

    tetrahedra: tuple[tuple[Label, ...], ...] = ()
    planes: tuple[tuple[Label, ...], ...] = ()
    lines: tuple[tuple[Label, ...], ...] = ()

    @classmethod
    def from_dict(cls, data: Mapping) -> "ManualEntities":
        def grab(key):
            return tuple(tuple(x) for x in data.get(key, ()))

        known = {"tetrahedra", "planes", "lines"}
        extra = set(data) - known
        if extra:
            raise InvalidInputError(f"unknown manual entity keys: {sorted(extra)}")
        return cls(grab("tetrahedra"), grab("planes"), grab("lines"))

    def to_entities(self) -> list[GeometricEntity]:
        out = [GeometricEntity(KIND_TETRAHEDRON, t) for t in self.tetrahedra]
        out += [GeometricEntity(KIND_PLANE, p) for p in self.planes]
        out += [GeometricEntity(KIND_LINE, l) for l in self.lines]
        return out


def identify(
    p: BracketPolynomial, manual: ManualEntities | None = None
) -> SingularityCondition:
    """Run the full identification pipeline on a reduced polynomial.

    With ``manual`` given, the asserted entities replace stages 1 to 4 and
    only grouping plus verification run.  The first verified reading wins;
    otherwise the first reading that matches a group is reported unverified.
    """
    p = p.combined()
    if p.is_zero():
        return SingularityCondition(
            "none",
            (),
            (),
            "the polynomial is identically zero: singular in every pose (architecture singularity)",
            NOT_ATTEMPTED,
        )

    if manual is not None:
        entities = manual.to_entities()
        tets = [e for e in entities if e.kind == KIND_TETRAHEDRON]
        rem = p
        for t in tets:
            _, br = normalize_bracket(t.labels)
            divided = _divide_out(rem, br) if br else None
            if divided is None:
                break
            rem = divided
        manual_planes = [e for e in entities if e.kind == KIND_PLANE]
        if manual_planes:
            try:
                _, _, full = _star_relabel_detailed(rem, manual_planes)
            except AmbiguousStarError:
                full = [False] * len(manual_planes)
            hosted = dict(
                zip(sorted(manual_planes, key=GeometricEntity.sort_key), full)
            )
            entities = [
                replace(e, starred=bool(hosted.get(e))) if e.kind == KIND_PLANE else e
                for e in entities
            ]
        covered = {l for e in entities for l in e.labels}
        residual = tuple(sorted(set(p.labels()) - covered))
        variants = [(_ordered(entities), residual)]
    else:
        tets, rem = find_tetrahedra(p)
        planes = find_planes(rem)
        try:
            rem_star, _, _ = _star_relabel_detailed(rem, planes)
        except AmbiguousStarError as err:
            ents = _ordered(tets + planes)
            return SingularityCondition(
                "none",
                ents,
                (),
                f"star re-labeling is ambiguous ({err}); rerun with manual entities",
                NOT_ATTEMPTED,
            )
        planes = [replace(e, starred=True) for e in planes]
        lines, leftover = find_line_pairs(rem_star)
        covered = {l for e in tets + planes for l in e.labels}
        residual = tuple(l for l in leftover if l not in covered)
        triangle = False
        if len(residual) == 3:
            x, y, z = residual
            triangle = (
                swap_interchange_test(rem_star, x, y)
                and swap_interchange_test(rem_star, x, z)
                and swap_interchange_test(rem_star, y, z)
            )
        variants = _resolve_residual(
            _ordered(tets + planes + lines), residual, triangle
        )

    fallback: SingularityCondition | None = None
    scanned: tuple[GeometricEntity, ...] = variants[0][0]
    scanned_res: tuple[Label, ...] = tuple(variants[0][1])
    for ents, res in variants:
        group = _match_group(ents, res)
        if group is None:
            continue
        candidate = _make_condition(group, _ordered(ents), res)
        if group == "a":
            return candidate
        status, ordered = _verify(candidate, p)
        if status == VERIFIED:
            assert ordered is not None
            return _make_condition(group, ordered, res, VERIFIED)
        if fallback is None:
            candidate = _make_condition(group, _ordered(ents), res, NOT_VERIFIED)
            fallback = candidate
    if fallback is not None:
        return fallback
    return _make_condition("none", scanned, scanned_res)
