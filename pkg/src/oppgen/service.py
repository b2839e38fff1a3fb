"""HTTP/JSON API over the project engine.

Run directly with:

    python -m oppgen.service --store ./projects --port 8765

Errors are returned as {"code", "message", "details"} with stable codes
matching the package's exception names.
"""

from __future__ import annotations

import argparse
import os
from typing import Optional

from fastapi import FastAPI, Request, Response, UploadFile
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .config import EngineConfig, load_config
from .engine import ProjectEngine
from .errors import InvalidParams, OppgenError
from .jobs import JobManager
from .store import ProjectStore

_HTTP_STATUS = {
    "UnknownProject": 404,
    "UnknownOpportunity": 404,
    "DuplicateName": 409,
    "StageNotReady": 409,
    "TooLarge": 413,
    "ServiceUnavailable": 502,
    "ProviderUnavailable": 502,
    "TranslatorUnavailable": 502,
}
_DEFAULT_ERROR_STATUS = 400


class CreateProjectBody(BaseModel):
    name: str
    config: Optional[dict] = None


class JobBody(BaseModel):
    kind: str
    params: dict = {}


class GenerateBody(BaseModel):
    kind: str
    space_ids: list[str]
    novelty_level: str
    qualities: list[str] = []
    custom_text: str = ""


class PivotBody(GenerateBody):
    parent_opportunity_id: str


class RateBody(BaseModel):
    opportunity_ids: list[str]
    challenge: str
    kind: str


class CompareBody(BaseModel):
    set_a: list[str] = []
    set_b: list[str] = []
    groups: Optional[list[list[str]]] = None  # three or more sets


def create_app(store_root: str, default_config: Optional[EngineConfig] = None) -> FastAPI:
    from fastapi.middleware.cors import CORSMiddleware

    store = ProjectStore(store_root)
    engine = ProjectEngine(store)
    jobs = JobManager(engine)
    app = FastAPI(title="opportunity engine", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(OppgenError)
    async def handle_oppgen_error(_: Request, exc: OppgenError) -> JSONResponse:
        status = _HTTP_STATUS.get(exc.code, _DEFAULT_ERROR_STATUS)
        return JSONResponse(status_code=status, content=exc.to_dict())

    def public_project(record: dict) -> dict:
        record = dict(record)
        record["config"] = EngineConfig.from_dict(record["config"]).public_dict()
        return record

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/projects", status_code=201)
    def create_project(body: CreateProjectBody) -> dict:
        config = (
            EngineConfig.from_dict(body.config)
            if body.config
            else (default_config or EngineConfig())
        )
        return public_project(engine.create_project(body.name, config))

    @app.get("/projects")
    def list_projects() -> list[dict]:
        return [public_project(p) for p in store.list_projects()]

    @app.get("/projects/{project_id}")
    def get_project(project_id: str) -> dict:
        record = public_project(store.get_project(project_id))
        record["asset_count"] = len(store.list_assets(project_id))
        record["has_spaces"] = store.has_spaces(project_id)
        return record

    @app.post("/projects/{project_id}/assets", status_code=201)
    async def upload_asset(project_id: str, file: UploadFile) -> dict:
        data = await file.read()
        return engine.upload_asset(project_id, file.filename or "upload", data)

    @app.get("/projects/{project_id}/assets")
    def list_assets(project_id: str) -> list[dict]:
        return store.list_assets(project_id)

    @app.post("/projects/{project_id}/jobs", status_code=202)
    def start_job(project_id: str, body: JobBody) -> dict:
        return jobs.start(project_id, body.kind, body.params).to_dict()

    @app.get("/projects/{project_id}/jobs/{job_id}")
    def get_job(project_id: str, job_id: str) -> dict:
        job = jobs.get(job_id)
        if job.project_id != project_id:
            raise InvalidParams(f"job {job_id!r} does not belong to {project_id!r}")
        return job.to_dict()

    @app.get("/projects/{project_id}/spaces")
    def get_spaces(project_id: str, granularity: str = "broad", format: str = "full") -> dict:
        gset = store.load_granularity_set(project_id, granularity)
        return gset.report() if format == "report" else gset.to_dict()

    @app.get("/projects/{project_id}/opportunities")
    def list_opportunities(
        project_id: str,
        kind: Optional[str] = None,
        depth: Optional[int] = None,
        space: Optional[str] = None,
        novelty: Optional[str] = None,
    ) -> list[dict]:
        return [
            o.to_dict()
            for o in store.list_opportunities(
                project_id, kind=kind, depth=depth, space_id=space, novelty_level=novelty
            )
        ]

    @app.post("/projects/{project_id}/generate", status_code=202)
    def generate(project_id: str, body: GenerateBody) -> dict:
        return jobs.start(project_id, "generate", body.model_dump()).to_dict()

    @app.post("/projects/{project_id}/pivot", status_code=202)
    def pivot(project_id: str, body: PivotBody) -> dict:
        return jobs.start(project_id, "pivot", body.model_dump()).to_dict()

    @app.post("/projects/{project_id}/rate", status_code=202)
    def rate(project_id: str, body: RateBody) -> dict:
        return jobs.start(project_id, "rate", body.model_dump()).to_dict()

    @app.post("/projects/{project_id}/compare")
    def compare(project_id: str, body: CompareBody) -> dict:
        if body.groups:
            reports = engine.compare_groups(project_id, body.groups)
        else:
            reports = engine.compare_sets(project_id, body.set_a, body.set_b)
        return {"reports": [r.to_dict() for r in reports]}

    @app.get("/projects/{project_id}/ratings")
    def list_ratings(project_id: str) -> list[dict]:
        return [r.to_dict() for r in store.list_ratings(project_id)]

    @app.get("/projects/{project_id}/baselines")
    def list_baselines(project_id: str) -> list[dict]:
        return store.list_baselines(project_id)

    @app.get("/projects/{project_id}/export")
    def export_project(project_id: str) -> Response:
        payload = engine.export(project_id)
        return Response(
            content=payload,
            media_type="application/zip",
            headers={"Content-Disposition": f'attachment; filename="{project_id}.zip"'},
        )

    @app.post("/projects/import", status_code=201)
    async def import_project(request: Request, as_id: Optional[str] = None) -> dict:
        data = await request.body()
        project_id = engine.import_archive(data, as_id)
        return public_project(store.get_project(project_id))

    return app


def main(argv: Optional[list[str]] = None) -> None:
    import uvicorn

    parser = argparse.ArgumentParser(description="Run the opportunity engine service")
    parser.add_argument("--store", default=os.environ.get("OPPGEN_STORE", "./oppgen-projects"))
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8765)
    parser.add_argument("--config", default=None, help="JSON config file for new projects")
    args = parser.parse_args(argv)
    config = load_config(args.config) if args.config else load_config()
    app = create_app(args.store, config)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")


if __name__ == "__main__":
    main()
