"""HTTP surface for the verification pipeline.

Endpoints:
    POST /api/verify  {"claim": str} -> FactCheckResult JSON + latency_ms
    GET  /api/health  {"status", "index_size", "model_loaded"}
    GET  /api/stats   corpus statistics of the loaded corpus
    GET  /api/report  the most recent evaluation report, if any

Artifacts are held as one immutable snapshot on the application state;
reload swaps the whole snapshot atomically, so in-flight requests finish
on whatever snapshot they started with. Every error body is JSON with an
`error` code field.
"""

from __future__ import annotations

import os
import threading
import time

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.concurrency import run_in_threadpool

from .errors import EmptyTextError, HifactError, RuntimeFailure, StageError
from .pipeline import PipelineArtifacts, verify


class ServiceState:
    def __init__(
        self,
        artifacts: PipelineArtifacts | None = None,
        stats: dict | None = None,
        report: dict | None = None,
        max_in_flight: int = 32,
    ):
        self.artifacts = artifacts
        self.stats = stats
        self.report = report
        self._gate = threading.Semaphore(max_in_flight)

    def swap_artifacts(self, artifacts: PipelineArtifacts) -> None:
        # attribute assignment is atomic; readers see old or new, never a mix
        self.artifacts = artifacts


def _error(status: int, code: str, detail: str | None = None) -> JSONResponse:
    body = {"error": code}
    if detail:
        body["detail"] = detail
    return JSONResponse(body, status_code=status)


def create_app(state: ServiceState, allowed_origin: str | None = None) -> FastAPI:
    app = FastAPI(title="hifactmix", docs_url=None, redoc_url=None)
    app.state.service = state

    origin = allowed_origin or os.environ.get("HIFACT_ALLOWED_ORIGIN", "")
    if origin:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=[origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.post("/api/verify")
    async def handle_verify(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "empty_claim", "request body must be JSON")
        claim = body.get("claim") if isinstance(body, dict) else None
        if not isinstance(claim, str) or not claim.strip():
            return _error(400, "empty_claim")
        snapshot = state.artifacts
        if snapshot is None:
            return _error(503, "artifacts_not_loaded")
        def run():
            with state._gate:
                return verify(snapshot, claim)

        start = time.perf_counter()
        try:
            result = await run_in_threadpool(run)
        except StageError as e:
            if isinstance(e.cause, RuntimeFailure):
                return _error(502, "upstream", str(e.cause))
            return _error(500, "internal", str(e))
        except RuntimeFailure as e:
            return _error(502, "upstream", str(e))
        except EmptyTextError:
            return _error(400, "empty_claim")
        except HifactError as e:
            return _error(500, "internal", str(e))
        latency_ms = (time.perf_counter() - start) * 1000.0
        payload = result.to_dict()
        payload["latency_ms"] = latency_ms
        return JSONResponse(payload)

    @app.get("/api/health")
    async def handle_health():
        snapshot = state.artifacts
        return JSONResponse(
            {
                "status": "ok",
                "index_size": len(snapshot.index) if snapshot else 0,
                "model_loaded": snapshot is not None,
            }
        )

    @app.get("/api/stats")
    async def handle_stats():
        if state.stats is None:
            return _error(404, "stats_not_available")
        return JSONResponse(state.stats)

    @app.get("/api/report")
    async def handle_report():
        if state.report is None:
            return _error(404, "report_not_available")
        return JSONResponse(state.report)

    return app
