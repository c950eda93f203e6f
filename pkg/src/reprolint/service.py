"""HTTP service: app upload, assessment jobs, report and wireframe retrieval.

Versioned JSON API under /api/v1. Jobs run synchronously on a bounded worker
pool; each assessment owns an isolated session, so concurrent requests do not
share mutable state. CLI and HTTP produce byte-identical machine reports for
identical inputs and seeds.
"""

from __future__ import annotations

import json
import uuid
from concurrent.futures import ThreadPoolExecutor

from fastapi import Body, FastAPI, HTTPException, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .appmodel import load_app_model, screen_from_dict
from .assess import AssessConfig, assess
from .errors import AppModelError, ConfigError, EmptyReportError, ReprolintError
from .graph import build_graph, dump_graph, load_graph, systematic_explore
from .ingest import parse_report
from .report import html_report, machine_report, report_from_dict
from .resolve import MatchConfig
from .store import ArtifactStore
from .wireframe import render_wireframe

DEFAULT_EXPLORE_BUDGET = 500


class AssessRequest(BaseModel):
    reportText: str
    appId: str
    config: dict = {}


def build_assess_config(overrides: dict) -> tuple[AssessConfig, int]:
    """AssessConfig plus exploration budget from request/CLI overrides."""
    known = {"depth", "randIterations", "randStepsPerIteration", "similarityThreshold",
             "seed", "exploreBudget"}
    unknown = set(overrides) - known
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    match = MatchConfig.from_dict(
        {"similarityThreshold": overrides["similarityThreshold"]}
        if "similarityThreshold" in overrides else None
    )
    cfg = AssessConfig(
        depth=overrides.get("depth", 6),
        rand_iterations=overrides.get("randIterations", 3),
        rand_steps=overrides.get("randStepsPerIteration", 10),
        seed=overrides.get("seed", 0),
        match=match,
    )
    return cfg, overrides.get("exploreBudget", DEFAULT_EXPLORE_BUDGET)


def graph_for_app(store: ArtifactStore, app_id: str, app_doc: dict, budget: int):
    """Load the cached execution graph for an app, exploring on first use."""
    cache_id = f"graph-{app_id}-{budget}"
    cached = store.get(cache_id)
    if cached is not None:
        return load_graph(cached.decode("utf-8"))
    model = load_app_model(app_doc)
    graph = build_graph(systematic_explore(model, budget=budget))
    store.put("graph", dump_graph(graph).encode("utf-8"),
              meta={"appId": app_id, "budget": budget}, artifact_id=cache_id)
    return graph


def create_app(data_dir=None, workers: int = 4) -> FastAPI:
    app = FastAPI(title="reprolint", version="1")
    store = ArtifactStore(data_dir)
    pool = ThreadPoolExecutor(max_workers=workers)

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        # undecodable body -> 400; wrong shape -> 422
        if any(err.get("type") == "json_invalid" for err in exc.errors()):
            return JSONResponse(status_code=400, content={"error": "malformed JSON body"})
        return JSONResponse(status_code=422, content={"error": exc.errors()})

    def _run_job(job_id: str, request: AssessRequest) -> None:
        try:
            store.put_json("job", {"jobId": job_id, "status": "running"}, artifact_id=job_id)
            app_doc = store.get_json(request.appId)
            assert app_doc is not None
            cfg, budget = build_assess_config(request.config)
            model = load_app_model(app_doc)
            graph = graph_for_app(store, request.appId, app_doc, budget)
            report = parse_report(request.reportText)
            qr = assess(report, model, graph, cfg)
            for ref, screen_doc in qr.wireframe_screens.items():
                store.put_json("wireframe", screen_doc, artifact_id=ref)
            store.put("report", machine_report(qr).encode("utf-8"),
                      meta={"appId": request.appId}, artifact_id=qr.report_id)
            store.put_json("job", {"jobId": job_id, "status": "done",
                                   "resultRef": qr.report_id}, artifact_id=job_id)
        except (ReprolintError, AssertionError) as exc:
            store.put_json("job", {"jobId": job_id, "status": "failed",
                                   "error": str(exc)}, artifact_id=job_id)

    @app.post("/api/v1/apps", status_code=201)
    def upload_app(doc: dict = Body(...)):
        try:
            model = load_app_model(doc)
        except AppModelError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        content = (json.dumps(doc, indent=1, sort_keys=True) + "\n").encode("utf-8")
        app_id = store.put("app", content,
                           meta={"appName": model.app_name, "screens": len(model.screens)})
        return {"appId": app_id, "appName": model.app_name}

    @app.get("/api/v1/apps")
    def list_apps():
        return {"apps": [
            {"appId": app_id, **meta} for app_id, meta in store.list_kind("app")
        ]}

    @app.post("/api/v1/assess", status_code=202)
    def submit_assessment(request: AssessRequest):
        entry = store.meta(request.appId)
        if entry is None or entry["kind"] != "app":
            raise HTTPException(status_code=404, detail=f"unknown app {request.appId!r}")
        if not request.reportText.strip():
            raise HTTPException(status_code=422, detail="reportText must not be empty")
        try:
            build_assess_config(request.config)
        except (ConfigError, EmptyReportError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        job_id = uuid.uuid4().hex[:12]
        store.put_json("job", {"jobId": job_id, "status": "queued"}, artifact_id=job_id)
        pool.submit(_run_job, job_id, request)
        return {"jobId": job_id}

    @app.get("/api/v1/jobs/{job_id}")
    def job_status(job_id: str):
        entry = store.meta(job_id)
        if entry is None or entry["kind"] != "job":
            raise HTTPException(status_code=404, detail=f"unknown job {job_id!r}")
        return store.get_json(job_id)

    @app.get("/api/v1/reports/{report_id}")
    def get_report(report_id: str, request: Request):
        entry = store.meta(report_id)
        if entry is None or entry["kind"] != "report":
            raise HTTPException(status_code=404, detail=f"unknown report {report_id!r}")
        raw = store.get(report_id)
        if "text/html" in request.headers.get("accept", ""):
            qr = report_from_dict(json.loads(raw))
            refs = {ref for e in qr.entries for a in e.annotations for ref in a.wireframe_refs}
            qr.wireframe_screens = {
                ref: doc for ref in sorted(refs)
                if (doc := store.get_json(ref)) is not None
            }
            return Response(content=html_report(qr), media_type="text/html")
        return Response(content=raw, media_type="application/json")

    @app.get("/api/v1/wireframes/{ref}")
    def get_wireframe(ref: str, highlight: str | None = None):
        entry = store.meta(ref)
        if entry is None or entry["kind"] != "wireframe":
            raise HTTPException(status_code=404, detail=f"unknown wireframe {ref!r}")
        screen = screen_from_dict(store.get_json(ref))
        svg = render_wireframe(screen, highlight=highlight)
        return Response(content=svg, media_type="image/svg+xml")

    return app
