"""Asynchronous job execution for the HTTP service.

Jobs run on a bounded worker pool; state moves queued -> running ->
succeeded|failed with monotone progress. The registry is in-memory (jobs
are ephemeral; project state lives in the store).
"""

from __future__ import annotations

import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Optional

from .engine import ProjectEngine
from .errors import InvalidParams, OppgenError, UnknownProject
from .generation import GenerationRequest

JOB_KINDS = (
    "process_assets",
    "discover_spaces",
    "describe_spaces",
    "generate",
    "pivot",
    "rate",
    "baseline_protocol",
)


@dataclass
class Job:
    job_id: str
    project_id: str
    kind: str
    state: str = "queued"  # queued -> running -> succeeded | failed
    progress: int = 0
    result: Optional[dict] = None
    error: Optional[dict] = None
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def to_dict(self) -> dict:
        return {
            "job_id": self.job_id,
            "project_id": self.project_id,
            "kind": self.kind,
            "state": self.state,
            "progress": self.progress,
            "result": self.result,
            "error": self.error,
        }

    def set_progress(self, value: int) -> None:
        with self._lock:
            self.progress = max(self.progress, min(100, value))


class JobManager:
    def __init__(self, engine: ProjectEngine, max_workers: int = 4) -> None:
        self.engine = engine
        self._pool = ThreadPoolExecutor(max_workers=max_workers)
        self._jobs: dict[str, Job] = {}
        self._guard = threading.Lock()

    def get(self, job_id: str) -> Job:
        with self._guard:
            job = self._jobs.get(job_id)
        if job is None:
            raise InvalidParams(f"unknown job {job_id!r}")
        return job

    def start(self, project_id: str, kind: str, params: dict[str, Any]) -> Job:
        if kind not in JOB_KINDS:
            raise InvalidParams(f"unknown job kind {kind!r}; expected one of {JOB_KINDS}")
        self.engine.store.get_project(project_id)  # raises UnknownProject
        runner = self._build_runner(project_id, kind, params)
        job = Job(job_id=uuid.uuid4().hex[:12], project_id=project_id, kind=kind)
        with self._guard:
            self._jobs[job.job_id] = job

        def execute() -> None:
            job.state = "running"
            try:
                job.result = runner(job)
                job.progress = 100
                job.state = "succeeded"
            except OppgenError as exc:
                job.error = exc.to_dict()
                job.state = "failed"
            except Exception as exc:  # defensive: never lose a job silently
                job.error = {"code": "InternalError", "message": str(exc), "details": {}}
                job.state = "failed"

        self._pool.submit(execute)
        return job

    def _build_runner(self, project_id: str, kind: str, params: dict[str, Any]):
        """Validate params now (so bad requests fail fast) and return the task."""
        engine = self.engine
        if kind == "process_assets":
            return lambda job: engine.process_assets(project_id, job.set_progress)
        if kind == "discover_spaces":
            return lambda job: engine.discover(project_id, job.set_progress)
        if kind == "describe_spaces":
            granularity = params.get("granularity")
            return lambda job: engine.describe_spaces(project_id, granularity, job.set_progress)
        if kind == "generate":
            request = _generation_request(params)
            return lambda job: engine.generate(project_id, request)
        if kind == "pivot":
            request = _generation_request(params)
            parent = params.get("parent_opportunity_id")
            if not parent:
                raise InvalidParams("pivot requires parent_opportunity_id")
            return lambda job: engine.pivot(project_id, parent, request)
        if kind == "rate":
            ids = params.get("opportunity_ids") or []
            challenge = params.get("challenge", "")
            rate_kind = params.get("kind", "")
            if not ids:
                raise InvalidParams("rate requires opportunity_ids")
            if not challenge:
                raise InvalidParams("rate requires a challenge text")
            if rate_kind not in ("policy", "business", "technical_design"):
                raise InvalidParams(f"unknown rating kind {rate_kind!r}")
            return lambda job: engine.rate(project_id, ids, challenge, rate_kind)
        if kind == "baseline_protocol":
            space_ids = params.get("space_ids") or []
            custom_text = params.get("custom_text", "")
            return lambda job: engine.run_baseline_protocol(
                project_id, space_ids, custom_text, job.set_progress
            )
        raise InvalidParams(f"unhandled job kind {kind!r}")


def _generation_request(params: dict[str, Any]) -> GenerationRequest:
    try:
        return GenerationRequest(
            kind=params.get("kind", ""),
            space_ids=tuple(params.get("space_ids") or ()),
            novelty_level=params.get("novelty_level", ""),
            qualities=tuple(params.get("qualities") or ()),
            custom_text=params.get("custom_text", ""),
        )
    except TypeError as exc:
        raise InvalidParams(f"bad generation parameters: {exc}") from exc
