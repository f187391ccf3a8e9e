from __future__ import annotations

import json

import pytest

from singbench.analysis import (
    StructureValidationError,
    analyze_structure,
    entities_view,
    evaluate_structure,
)
from singbench.cli import main
from singbench.entities import ManualEntities
from singbench.geometry import Pose
from singbench.robot import RobotStructure, robot_to_dict

from conftest import ROBOTS

IDENTITY = "0,0,0,1,0,0,0"


class TestAnalyzeStructure:
    def test_hexapod_generic(self, hexapod):
        result = analyze_structure(hexapod)
        assert result.structure_class.name == "6-6"
        assert result.auto_reduce_suggested
        assert result.auto_reduce_applied  # suggestion triggers the search
        assert result.polynomial.monomial_count == 24
        assert result.condition.group == "a"
        assert any("already shortest" in s for s in result.stages)

    def test_octahedral_short_form(self, octahedral):
        result = analyze_structure(octahedral)
        assert result.structure_class.name == "3-3"
        assert result.polynomial.monomial_count == 2
        assert not result.auto_reduce_suggested
        assert not result.auto_reduce_applied
        assert result.condition.group == "none"
        assert result.stages[-1] == f"reduced polynomial: {result.polynomial}"

    def test_octahedral_explicit_search(self, octahedral):
        result = analyze_structure(octahedral, auto_reduce=True)
        assert result.auto_reduce_applied
        assert result.polynomial.monomial_count == 2

    def test_screws_concurrent(self, screws):
        result = analyze_structure(screws)
        assert result.polynomial.monomial_count == 1
        assert result.condition.group == "g"
        assert result.condition.verified == "verified"

    def test_invalid_structure_raises(self, hexapod):
        broken = RobotStructure(
            name="", kind=hexapod.kind, anchors=hexapod.anchors, legs=hexapod.legs[:5]
        )
        with pytest.raises(StructureValidationError) as err:
            analyze_structure(broken)
        assert len(err.value.problems) == 2

    def test_manual_stage_logged(self, screws):
        manual = ManualEntities(
            tetrahedra=(
                ("A1", "B1", "C1", "S1"),
                ("A2", "S1", "S2", "S3"),
                ("A3", "B3", "S1", "S3"),
            )
        )
        result = analyze_structure(screws, manual=manual)
        assert result.condition.group == "g"
        assert result.condition.verified == "verified"
        assert any("manually asserted" in s for s in result.stages)

    def test_to_dict_shape(self, screws):
        d = analyze_structure(screws).to_dict()
        assert d["monomial_count"] == 1
        assert len(d["monomials"]) == 1
        assert d["monomials"][0]["coefficient"] in (-1, 1)
        assert d["condition"]["group"] == "g"
        assert d["leg_order"] == [list(leg) for leg in screws.legs]


class TestEvaluateStructure:
    def test_identity_pose_regular(self, hexapod):
        report = evaluate_structure(hexapod, Pose.identity())
        assert not report.near_singular
        assert report.normalized_measure > 1e-4

    def test_coplanar_pose_singular(self, hexapod):
        pose = Pose((0.0, 0.0, -1.0), (1.0, 0.0, 0.0, 0.0))
        report = evaluate_structure(hexapod, pose)
        assert report.near_singular
        assert report.raw_value == pytest.approx(0.0, abs=1e-9)

    def test_epsilon_passthrough(self, hexapod):
        report = evaluate_structure(hexapod, Pose.identity(), epsilon=10.0)
        assert report.near_singular

    def test_entities_view(self, screws):
        analysis = analyze_structure(screws)
        view = entities_view(screws, analysis, Pose.identity())
        assert set(view) == {"pose", "anchors", "legs", "condition", "entities"}
        assert len(view["anchors"]) == len(screws.anchors)
        assert len(view["entities"]) == 3
        for ent in view["entities"]:
            assert set(ent["points"]) == set(ent["labels"])


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCliAnalyze:
    def test_json_deterministic(self, capsys):
        path = str(ROBOTS / "gsp_3_3.json")
        code1, out1, _ = run_cli(capsys, "analyze", path, "--format", "json")
        code2, out2, _ = run_cli(capsys, "analyze", path, "--format", "json")
        assert code1 == code2 == 0
        assert out1 == out2

    def test_json_content(self, capsys):
        path = str(ROBOTS / "equivalent_screws_4dof.json")
        code, out, _ = run_cli(capsys, "analyze", path, "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["condition"]["group"] == "g"
        assert data["condition"]["verified"] == "verified"
        assert data["monomial_count"] == 1

    def test_text_format(self, capsys):
        path = str(ROBOTS / "equivalent_screws_4dof.json")
        code, out, _ = run_cli(capsys, "analyze", path)
        assert code == 0
        assert "condition group: g [verified]" in out
        assert "tetrahedron: {" in out
        assert "stages:" in out

    def test_missing_file_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "analyze", "/nonexistent/robot.json")
        assert code == 2
        assert "no such file" in err

    def test_invalid_structure_exits_2(self, capsys, tmp_path, hexapod):
        data = robot_to_dict(hexapod)
        data["legs"] = data["legs"][:5]
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(data))
        code, _, err = run_cli(capsys, "analyze", str(bad))
        assert code == 2
        assert "invalid robot structure" in err
        assert "expected 6 legs" in err

    def test_manual_file(self, capsys, tmp_path):
        manual = tmp_path / "manual.json"
        manual.write_text(
            json.dumps(
                {
                    "tetrahedra": [
                        ["A1", "B1", "C1", "S1"],
                        ["A2", "S1", "S2", "S3"],
                        ["A3", "B3", "S1", "S3"],
                    ]
                }
            )
        )
        path = str(ROBOTS / "equivalent_screws_4dof.json")
        code, out, _ = run_cli(
            capsys, "analyze", path, "--manual", str(manual), "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        assert data["condition"]["group"] == "g"
        assert any("manually asserted" in s for s in data["stages"])

    def test_bad_manual_key_exits_2(self, capsys, tmp_path):
        manual = tmp_path / "manual.json"
        manual.write_text(json.dumps({"spheres": []}))
        path = str(ROBOTS / "gsp_3_3.json")
        code, _, err = run_cli(capsys, "analyze", path, "--manual", str(manual))
        assert code == 2
        assert "unknown manual entity keys" in err


class TestCliEvaluate:
    def test_json_deterministic(self, capsys):
        path = str(ROBOTS / "gsp_6_6.json")
        code1, out1, _ = run_cli(capsys, "evaluate", path, "--pose", IDENTITY)
        code2, out2, _ = run_cli(capsys, "evaluate", path, "--pose", IDENTITY)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_report_content(self, capsys):
        path = str(ROBOTS / "gsp_6_6.json")
        code, out, _ = run_cli(capsys, "evaluate", path, "--pose", IDENTITY)
        assert code == 0
        data = json.loads(out)
        assert data["near_singular"] is False
        assert data["epsilon"] == 1e-6
        assert data["display"]["raw_value"] == repr(data["raw_value"])
        assert data["pose"]["translation"] == [0.0, 0.0, 0.0]

    def test_epsilon_override(self, capsys):
        path = str(ROBOTS / "gsp_6_6.json")
        code, out, _ = run_cli(
            capsys, "evaluate", path, "--pose", IDENTITY, "--epsilon", "10"
        )
        assert code == 0
        assert json.loads(out)["near_singular"] is True

    def test_bad_pose_exits_2(self, capsys):
        path = str(ROBOTS / "gsp_6_6.json")
        for pose in ("0,0,0", "0,0,0,2,0,0,0", "a,b,c,d,e,f,g"):
            code, _, err = run_cli(capsys, "evaluate", path, "--pose", pose)
            assert code == 2
            assert err

    def test_bad_epsilon_exits_2(self, capsys):
        path = str(ROBOTS / "gsp_6_6.json")
        code, _, err = run_cli(
            capsys, "evaluate", path, "--pose", IDENTITY, "--epsilon", "-1"
        )
        assert code == 2
        assert "epsilon must be positive" in err

    def test_degenerate_geometry_exits_3(self, capsys, tmp_path, hexapod):
        data = robot_to_dict(hexapod)
        for a in data["anchors"]:
            a["xyz"] = [0.0, 0.0, 0.0]
        squashed = tmp_path / "coincident.json"
        squashed.write_text(json.dumps(data))
        code, _, err = run_cli(capsys, "evaluate", str(squashed), "--pose", IDENTITY)
        assert code == 3
        assert "degenerate configuration" in err
