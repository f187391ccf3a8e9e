"""HTTP service around the analysis pipeline.

One robot structure is active at a time.  Loading a structure bumps the
session counter; pose updates may carry the session they were computed for,
and a stale session is refused so late updates from a previous structure
cannot contaminate the current one.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import RedirectResponse
from fastapi.staticfiles import StaticFiles

from . import schemas
from .analysis import (
    AnalysisResult,
    StructureValidationError,
    analyze_structure,
    condition_to_dict,
    entities_view,
    report_to_dict,
    evaluate_structure,
)
from .brackets import InvalidInputError
from .geometry import DEFAULT_EPSILON, DegenerateGeometryError, Pose
from .robot import RobotStructure, classify_structure, robot_from_dict
from .superbracket import monomial_count

UI_DIST = Path(__file__).resolve().parents[2] / "frontend" / "dist"


class _Session:
    def __init__(self, version: int, structure: RobotStructure, analysis: AnalysisResult):
        self.version = version
        self.structure = structure
        self.analysis = analysis
        self.pose = Pose.identity()
        self.epsilon = DEFAULT_EPSILON


def create_app() -> FastAPI:
    app = FastAPI(title="singbench", version="0.1.0")
    lock = threading.Lock()
    state: dict = {"session": None, "counter": 0}

    def current() -> _Session:
        session = state["session"]
        if session is None:
            raise HTTPException(status_code=409, detail="no robot structure loaded")
        return session

    @app.post("/api/robot", response_model=schemas.AnalysisOut)
    def post_robot(doc: schemas.RobotIn, auto_reduce: bool = False):
        structure = robot_from_dict(doc.model_dump())
        try:
            analysis = analyze_structure(structure, auto_reduce=auto_reduce)
        except StructureValidationError as err:
            raise HTTPException(status_code=400, detail={"violations": err.problems})
        with lock:
            state["counter"] += 1
            session = _Session(state["counter"], structure, analysis)
            state["session"] = session
        return {"session": session.version, **analysis.to_dict()}

    @app.get("/api/condition", response_model=schemas.ConditionStateOut)
    def get_condition():
        session = current()
        analysis = session.analysis
        return {
            "session": session.version,
            "name": session.structure.name,
            "structure_class": {
                "name": analysis.structure_class.name,
                "base_points": analysis.structure_class.base_points,
                "platform_points": analysis.structure_class.platform_points,
            },
            "monomial_count": monomial_count(analysis.polynomial),
            "polynomial": str(analysis.polynomial),
            "condition": condition_to_dict(analysis.condition),
        }

    @app.post("/api/pose", response_model=schemas.ReportOut)
    def post_pose(req: schemas.PoseIn):
        session = current()
        if req.session is not None and req.session != session.version:
            raise HTTPException(
                status_code=409,
                detail=f"stale session {req.session}; current is {session.version}",
            )
        try:
            pose = Pose(req.translation, req.quaternion)
        except InvalidInputError as err:
            raise HTTPException(status_code=422, detail=str(err))
        epsilon = req.epsilon if req.epsilon is not None else DEFAULT_EPSILON
        try:
            report = evaluate_structure(
                session.structure, pose, epsilon, analysis=session.analysis
            )
        except DegenerateGeometryError as err:
            raise HTTPException(status_code=400, detail=str(err))
        with lock:
            if state["session"] is session:
                session.pose = pose
                session.epsilon = epsilon
        return {"session": session.version, **report_to_dict(report, pose)}

    @app.get("/api/entities", response_model=schemas.EntitiesOut)
    def get_entities():
        session = current()
        view = entities_view(session.structure, session.analysis, session.pose)
        return {"session": session.version, **view}

    if UI_DIST.is_dir():
        app.mount("/ui", StaticFiles(directory=UI_DIST, html=True), name="ui")

        @app.get("/", include_in_schema=False)
        def root():
            return RedirectResponse(url="/ui/")

    return app


app = create_app()
