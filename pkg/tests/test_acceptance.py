"""Acceptance suite: the binding checks for this package.

Each test is one criterion; the conftest terminal hook prints a PASS/FAIL
line per criterion at the end of the run.  Tolerances are pinned here, not
imported, so a library change cannot silently weaken the gate.
"""

from __future__ import annotations

import itertools
import math
import random
import time

import pytest

from singbench.brackets import BracketPolynomial, swap_interchange_test
from singbench.entities import VERIFIED, identify, verify_condition
from singbench.geometry import (
    CONDITION_NUMBER_THRESHOLD,
    Pose,
    bracket_value,
    check_four_planes,
    check_tetrahedron,
    evaluate_polynomial,
    jacobian_oracle,
    plane_coeffs,
    singularity_report,
)
from singbench.robot import coordinates_at
from singbench.superbracket import expand_superbracket, shortest_form_search

from conftest import random_pose
from expected_forms import (
    ALTERED_4_TERMS,
    ALTERED_LEGS,
    CONCURRENT_TERM,
    GENERIC_24_TERMS,
    OCTAHEDRAL_2_TERMS,
    OCTAHEDRAL_LEGS,
    as_polynomial,
)

GENERIC_LEGS = (("a", "b"), ("c", "d"), ("e", "f"), ("g", "h"), ("i", "j"), ("k", "l"))

CRITERIA = {
    "test_generic_expansion_reproduced": "24-monomial generic superbracket matches the reference form (<1 s)",
    "test_reduced_forms_reproduced": "short leg orders give the known 2- and 4-monomial forms (<1 s)",
    "test_shortest_form_search_deterministic": "720-order search finds the 2-monomial 3-3 form deterministically (<2 s)",
    "test_concurrent_condition_group_g": "single-monomial concurrent case identifies as group g and verifies",
    "test_polynomial_matches_jacobian_oracle": "superbracket evaluation tracks the line-coordinate Jacobian oracle",
    "test_unit_tetrahedron_bracket": "unit tetrahedron bracket has magnitude one",
    "test_homogeneity_and_rigid_invariance": "degree-9 scaling law and rigid-transform invariance hold",
    "test_swap_suite": "all six leg pairs pass the interchange test and non-leg pairs fail",
    "test_condition_number_checks": "concurrent planes report infinite condition number, regular faces stay finite",
}


def test_generic_expansion_reproduced():
    t0 = time.perf_counter()
    p = expand_superbracket(GENERIC_LEGS)
    elapsed = time.perf_counter() - t0
    assert p.monomial_count == 24
    assert sorted(p.monomials()) == sorted(as_polynomial(GENERIC_24_TERMS).monomials())
    assert elapsed < 1.0


def test_reduced_forms_reproduced():
    t0 = time.perf_counter()
    two = expand_superbracket(OCTAHEDRAL_LEGS)
    four = expand_superbracket(ALTERED_LEGS)
    elapsed = time.perf_counter() - t0
    assert two.monomial_count == 2
    assert two.equals_up_to_sign(as_polynomial(OCTAHEDRAL_2_TERMS))
    assert four.monomial_count == 4
    expected = as_polynomial(ALTERED_4_TERMS, combine=False)
    assert sorted(four.monomials()) == sorted(expected.monomials()) or sorted(
        (-four).monomials()
    ) == sorted(expected.monomials())
    assert elapsed < 1.0


def test_shortest_form_search_deterministic(octahedral):
    t0 = time.perf_counter()
    order1, p1 = shortest_form_search(octahedral.legs)
    elapsed = time.perf_counter() - t0
    order2, p2 = shortest_form_search(octahedral.legs)
    assert p1.monomial_count == 2
    assert (order1, p1) == (order2, p2)
    assert elapsed < 2.0


def test_concurrent_condition_group_g(screws):
    p = BracketPolynomial.single(1, [tuple(br) for br in CONCURRENT_TERM])
    cond = identify(p)
    assert cond.group == "g"
    assert cond.verified == VERIFIED
    assert verify_condition(cond, p) == VERIFIED
    assert [e.kind for e in cond.entities] == ["tetrahedron"] * 3
    assert "at least one tetrahedron coplanar" in cond.statement
    # the checked-in concurrent robot expands to this same monomial
    assert expand_superbracket(screws.legs).equals_up_to_sign(p)


def test_polynomial_matches_jacobian_oracle(hexapod, octahedral, screws):
    for seed, robot in ((101, hexapod), (102, octahedral), (103, screws)):
        rng = random.Random(seed)
        p = expand_superbracket(robot.legs)
        ratios = []
        for _ in range(12):
            pose = random_pose(rng)
            coords = coordinates_at(robot, pose)
            value = evaluate_polynomial(p, coords)
            oracle = jacobian_oracle(robot.legs, coords)
            assert abs(oracle) > 1e-12
            ratios.append(value / oracle)
        spread = max(ratios) - min(ratios)
        assert spread <= 1e-9 * abs(ratios[0])
        assert ratios[0] == pytest.approx(-1.0, rel=1e-9)

        # a pose flattening the platform onto the base zeroes both sides
        flat = Pose((0.0, 0.0, -1.0), (1.0, 0.0, 0.0, 0.0))
        coords = coordinates_at(robot, flat)
        assert abs(evaluate_polynomial(p, coords)) < 1e-9
        assert abs(jacobian_oracle(robot.legs, coords)) < 1e-9
        assert singularity_report(p, coords).near_singular


def test_unit_tetrahedron_bracket():
    v = bracket_value((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert abs(abs(v) - 1.0) <= 1e-12


def test_homogeneity_and_rigid_invariance(hexapod):
    rng = random.Random(104)
    p = expand_superbracket(hexapod.legs)
    coords = coordinates_at(hexapod, random_pose(rng))
    base = evaluate_polynomial(p, coords)
    assert base != 0.0
    for s in (0.5, 2.0, 3.7):
        scaled = {l: tuple(s * x for x in v) for l, v in coords.items()}
        assert evaluate_polynomial(p, scaled) == pytest.approx(s**9 * base, rel=1e-9)
    for _ in range(5):
        move = random_pose(rng, spread=3.0)
        moved = {l: tuple(move.apply(v)) for l, v in coords.items()}
        assert evaluate_polynomial(p, moved) == pytest.approx(base, rel=1e-9)


def test_swap_suite():
    p = expand_superbracket(GENERIC_LEGS)
    legs = {tuple(sorted(leg)) for leg in GENERIC_LEGS}
    for x, y in sorted(legs):
        assert swap_interchange_test(p, x, y), f"leg pair ({x}, {y}) must pass"
    non_leg = [
        pair
        for pair in itertools.combinations(sorted(p.labels()), 2)
        if pair not in legs
    ]
    assert len(non_leg) >= 20
    for x, y in non_leg:
        assert not swap_interchange_test(p, x, y), f"non-leg pair ({x}, {y}) must fail"


def test_condition_number_checks():
    concurrent = [
        plane_coeffs((0, 0, 0), (1, 0, 0), (0, 1, 0)),
        plane_coeffs((0, 0, 0), (0, 1, 0), (0, 0, 1)),
        plane_coeffs((0, 0, 0), (0, 0, 1), (1, 0, 0)),
        plane_coeffs((0, 0, 0), (1, -1, 0), (0, 1, -1)),
    ]
    assert math.isinf(check_four_planes(*concurrent))

    v = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    faces = [plane_coeffs(*(v[j] for j in range(4) if j != i)) for i in range(4)]
    finite = check_four_planes(*faces)
    assert math.isfinite(finite)
    assert finite < CONDITION_NUMBER_THRESHOLD
    assert math.isfinite(check_tetrahedron(*v))
    assert check_tetrahedron(*v) < CONDITION_NUMBER_THRESHOLD
