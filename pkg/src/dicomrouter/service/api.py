"""HTTP/JSON surface of the routing service."""
from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse

from ..dicom import DicomParseError, MissingMagic
from ..nn.classes import CLASS_NAMES
from .audit import AuditLog
from .core import AuditUnavailable, RouterCore
from .review import ReviewError, ReviewStore


def create_app(core: RouterCore) -> FastAPI:
    app = FastAPI(title="dicomrouter", docs_url=None, redoc_url=None)
    config = core.config

    @app.middleware("http")
    async def check_token(request: Request, call_next):
        if config.api_token and request.url.path != "/healthz":
            if request.headers.get("X-Api-Token") != config.api_token:
                return JSONResponse({"detail": "invalid or missing API token"}, status_code=401)
        return await call_next(request)

    @app.get("/healthz")
    def healthz() -> PlainTextResponse:
        return PlainTextResponse("ok")

    def _classify_or_response(data: bytes):
        if core.backend is None:
            return JSONResponse({"detail": "backend not loaded"}, status_code=503)
        if not data:
            return JSONResponse({"detail": "empty body"}, status_code=400)
        try:
            return core.classify(data)
        except MissingMagic:
            return JSONResponse({"detail": "payload is not a DICOM Part-10 file"}, status_code=415)
        except DicomParseError as exc:
            return JSONResponse({"detail": f"malformed DICOM: {exc}"}, status_code=400)
        except Exception as exc:  # pixel-format and backend failures
            return JSONResponse({"detail": str(exc)}, status_code=400)

    @app.post("/v1/classify")
    async def classify(request: Request):
        result = _classify_or_response(await request.body())
        if isinstance(result, JSONResponse):
            return result
        return {
            "id": result.item_id,
            "class": CLASS_NAMES[result.predicted],
            "class_code": int(result.predicted),
            "probs": result.probs,
            "latency_s": result.latency_s,
        }

    @app.post("/v1/ingest")
    async def ingest(request: Request):
        if core.backend is None:
            return JSONResponse({"detail": "backend not loaded"}, status_code=503)
        if core.degraded:
            return JSONResponse({"detail": "audit unavailable, ingest disabled"}, status_code=503)
        data = await request.body()
        if not data:
            return JSONResponse({"detail": "empty body"}, status_code=400)
        try:
            decision = core.ingest(data)
        except AuditUnavailable as exc:
            return JSONResponse({"detail": str(exc)}, status_code=503)
        return {
            "id": decision.item_id,
            "status": decision.status,
            "class": CLASS_NAMES[decision.predicted] if decision.predicted is not None else None,
            "probs": decision.probs,
            "latency_s": decision.latency_s,
            "destination": decision.destination,
            "error": decision.error,
        }

    @app.get("/v1/review/queue")
    def review_queue():
        return [item.to_json() for item in core.review.pending()]

    @app.post("/v1/review/{item_id}/label")
    async def submit_label(item_id: str, request: Request):
        try:
            payload = await request.json()
        except Exception:
            return JSONResponse({"detail": "body must be JSON"}, status_code=400)
        if not isinstance(payload, dict):
            return JSONResponse({"detail": "body must be a JSON object"}, status_code=400)
        reader = payload.get("reader")
        round_no = payload.get("round")
        label = payload.get("class")
        if not isinstance(reader, str) or not isinstance(round_no, int) or not isinstance(label, int):
            return JSONResponse(
                {"detail": "need reader (string), round (int), class (int)"}, status_code=400
            )
        try:
            item = core.review.submit_label(item_id, reader, round_no, label)
        except ReviewError as exc:
            return JSONResponse({"detail": str(exc)}, status_code=exc.status_code)
        return item.to_json()

    @app.get("/v1/images/{item_id}.png")
    def rendition(item_id: str):
        path = core.config.renditions_dir / f"{item_id}.png"
        if not path.is_file():
            return JSONResponse({"detail": f"no rendition for {item_id!r}"}, status_code=404)
        return Response(content=path.read_bytes(), media_type="image/png")

    @app.get("/v1/audit")
    def audit_since(since: Optional[str] = None):
        records = core.audit.replay()
        if since:
            records = [r for r in records if r.get("ts", "") > since]
        return records

    return app
