"""Live session service: one loaded container, one shared session.

HTTP surface:
    GET /piece       manifest plus one stem URL per track
    GET /stems/{i}   the exact WAV bytes stored in the container
    GET /healthz     liveness probe

WebSocket /session: the client sends {"type": "action", "action": {...}};
accepted actions broadcast an event (with the automatic changes) to every
connected client, rejections go only to the sender, and malformed traffic
gets an error reply without closing the socket.  All mutations pass through
one lock, so every client observes the same event order with strictly
increasing revisions.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import threading
from typing import Optional, Sequence

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import Response
from fastapi.staticfiles import StaticFiles

from . import container, wire
from .model import Piece
from .session import Accepted, Session

logger = logging.getLogger(__name__)


class _Client:
    """One socket with its own outbound queue and sender task.

    Outbound frames are queued onto the client's own event loop, never sent
    inline: a slow or unread client only stalls itself, delivery order per
    connection follows queue order exactly, and publishers may live on any
    thread or loop (test harnesses drive each socket from its own loop).
    """

    def __init__(self, ws: WebSocket):
        self.ws = ws
        self.loop = asyncio.get_running_loop()
        self.queue: asyncio.Queue[str] = asyncio.Queue()
        self.task = self.loop.create_task(self._drain())

    async def _drain(self):
        try:
            while True:
                await self.ws.send_text(await self.queue.get())
        except Exception:
            pass

    def send(self, message: dict):
        text = container.canonical_json(message)
        self.loop.call_soon_threadsafe(self.queue.put_nowait, text)

    def close(self):
        self.loop.call_soon_threadsafe(self.task.cancel)


class SessionHub:
    """The shared session plus the sockets listening to it.

    Session mutation and the enqueueing of its fan-out happen under one
    plain (thread) lock with nothing awaited inside, so every client
    observes the same total order of events no matter which connection's
    loop committed them.
    """

    def __init__(self, piece: Piece, payloads: Sequence[bytes]):
        self.piece = piece
        self.payloads = tuple(payloads)
        self.session = Session(piece)
        self.lock = threading.Lock()
        self.clients: dict[WebSocket, _Client] = {}

    def register(self, ws: WebSocket) -> _Client:
        """Add the socket and greet it with the current state, atomically
        with respect to concurrent commits."""
        client = _Client(ws)
        with self.lock:
            self.clients[ws] = client
            client.send(wire.hello_message(self.session))
        return client

    def broadcast(self, message: dict):
        for client in self.clients.values():
            client.send(message)

    def drop(self, ws: WebSocket):
        with self.lock:
            client = self.clients.pop(ws, None)
        if client is not None:
            client.close()
            logger.info("client dropped (%d left)", len(self.clients))


def create_app(piece: Optional[Piece] = None, payloads: Sequence[bytes] = (),
               ui_dir: Optional[str] = None) -> FastAPI:
    """Build the service; ``piece=None`` models "no container loaded"."""
    app = FastAPI(title="slax session service")
    hub = SessionHub(piece, payloads) if piece is not None else None
    app.state.hub = hub

    def canonical(obj, status=200) -> Response:
        return Response(container.canonical_json(obj), status_code=status,
                        media_type="application/json")

    @app.get("/healthz")
    async def healthz():
        return canonical({"status": "ok"})

    @app.get("/piece")
    async def get_piece():
        if hub is None:
            return canonical({"error": "no container loaded"}, status=503)
        return canonical({
            "manifest": container.piece_to_manifest(hub.piece),
            "stems": ["/stems/{}".format(i) for i in range(len(hub.payloads))],
        })

    @app.get("/stems/{index}")
    async def get_stem(index: int):
        if hub is None:
            return canonical({"error": "no container loaded"}, status=503)
        if not (0 <= index < len(hub.payloads)):
            return canonical({"error": "no stem {}".format(index)}, status=404)
        return Response(hub.payloads[index], media_type="audio/wav")

    @app.websocket("/session")
    async def session_socket(ws: WebSocket):
        await ws.accept()
        if hub is None:
            await ws.send_text(container.canonical_json(
                wire.error_message("NO_CONTAINER", "no container loaded")))
            await ws.close()
            return
        client = hub.register(ws)
        try:
            while True:
                raw = await ws.receive_text()
                try:
                    message = json.loads(raw)
                    if not isinstance(message, dict) or message.get("type") != "action":
                        raise ValueError("expected {\"type\": \"action\", \"action\": {...}}")
                    action = wire.action_from_json(message.get("action"))
                except (ValueError, json.JSONDecodeError) as e:
                    client.send(wire.error_message("BAD_ACTION", str(e)))
                    continue
                with hub.lock:
                    outcome = hub.session.apply(action)
                    if isinstance(outcome, Accepted):
                        hub.broadcast(wire.session_event(hub.session, outcome))
                    else:
                        client.send(wire.rejected_message(hub.session, outcome))
        except WebSocketDisconnect:
            pass
        finally:
            hub.drop(ws)

    if ui_dir:
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    return app


def serve_container(path: str, bind: str, port: int, ui_dir: Optional[str] = None):
    """Load a .slax file and serve it until interrupted."""
    import uvicorn

    with open(path, "rb") as f:
        piece, payloads = container.decode(f.read())
    app = create_app(piece, payloads, ui_dir=ui_dir)
    logger.info("serving %r on %s:%d", piece.title, bind, port)
    uvicorn.run(app, host=bind, port=port, log_level="info")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(description="serve a .slax container to listeners")
    parser.add_argument("--file", required=True, help="container to load")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--bind", default="127.0.0.1")
    parser.add_argument("--ui", default=None, help="directory of static listener UI files")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s")
    serve_container(args.file, args.bind, args.port, ui_dir=args.ui)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
