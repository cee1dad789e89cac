"""FastAPI gateway around a live simulation.

Endpoints: GET /state, /scenario, /healthz; a bidirectional socket at /ws
streaming snapshots and accepting command/control frames; optional static
hosting of the browser teleop bundle at the root path.
"""

from __future__ import annotations

import asyncio
import os
from contextlib import asynccontextmanager
from pathlib import Path

import pydantic
from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from botlink.scenarios.config import Scenario, load_scenario
from botlink.service.live import LiveSim, Rejected
from botlink.service.models import CommandFrame, ErrorFrame, inbound_adapter

_QUEUE_LIMIT = 8  # per-client backlog of snapshots before dropping oldest


def _default_ui_dir() -> Path | None:
    override = os.environ.get("BOTLINK_UI_DIR")
    if override:
        return Path(override)
    # repo layout: src/botlink/service/app.py -> repo root / frontend/dist
    candidate = Path(__file__).resolve().parents[3] / "frontend" / "dist"
    return candidate


def create_app(
    scenario: Scenario | str | Path,
    out_dir: str | Path | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    if not isinstance(scenario, Scenario):
        scenario = load_scenario(scenario)
    sim = LiveSim(scenario, out_dir=out_dir)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        sim.start()
        try:
            yield
        finally:
            sim.stop()

    app = FastAPI(title="botlink gateway", lifespan=lifespan)
    app.state.sim = sim

    @app.get("/healthz")
    def healthz() -> JSONResponse:
        if sim.stepping:
            return JSONResponse({"status": "ok"})
        return JSONResponse({"status": "stopped"}, status_code=503)

    @app.get("/state")
    def state() -> JSONResponse:
        snap = sim.snapshot()
        if snap is None:
            return JSONResponse({"detail": "no snapshot yet"}, status_code=503)
        return JSONResponse(snap)

    @app.get("/scenario")
    def scenario_endpoint() -> JSONResponse:
        return JSONResponse(sim.scenario.model_dump(mode="json"))

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket) -> None:
        await ws.accept()
        loop = asyncio.get_running_loop()
        outbox: asyncio.Queue[dict] = asyncio.Queue()

        def on_snapshot(snap: dict) -> None:
            def push() -> None:
                while outbox.qsize() >= _QUEUE_LIMIT:
                    try:
                        outbox.get_nowait()
                    except asyncio.QueueEmpty:
                        break
                outbox.put_nowait(snap)

            loop.call_soon_threadsafe(push)

        latest = sim.snapshot()
        if latest is not None:
            await ws.send_json(latest)
        sim.add_listener(on_snapshot)

        async def pump() -> None:
            while True:
                snap = await outbox.get()
                await ws.send_json(snap)

        sender = asyncio.create_task(pump())
        try:
            while True:
                text = await ws.receive_text()
                try:
                    frame = inbound_adapter.validate_json(text)
                except pydantic.ValidationError as exc:
                    await ws.send_json(
                        ErrorFrame(message=f"bad frame: {exc.errors()[0]['msg']}").model_dump()
                    )
                    continue
                if isinstance(frame, CommandFrame):
                    result = sim.inject_command(frame)
                    if isinstance(result, Rejected):
                        await ws.send_json(ErrorFrame(message=result.reason).model_dump())
                else:
                    sim.control(frame)
        except WebSocketDisconnect:
            pass
        finally:
            sim.remove_listener(on_snapshot)
            sender.cancel()

    resolved_ui = Path(ui_dir) if ui_dir is not None else _default_ui_dir()
    if resolved_ui is not None and resolved_ui.is_dir():
        app.mount("/", StaticFiles(directory=resolved_ui, html=True), name="ui")

    return app
