"""JSON-over-HTTP session service.

Turns are discrete, so the protocol is plain request/response polling:

    POST /sessions                     {choice_a, choice_b, seed?, venue?}
    POST /sessions/{id}/utterance      {text?}          (omitted text = silence)
    POST /sessions/{id}/ratings        {pre, post, impressions[9]}
    GET  /sessions/{id}/transcript
    GET  /metrics
    GET  /catalog
    GET  /questionnaire

Every session-scoped response echoes session_id and the current state.
"""
from __future__ import annotations

import json
import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional

from .scenario import DialogueEngine, SessionContext, SessionDoneError
from .store import SessionNotFinishedError, SessionStore, UnknownSessionError

_SESSION_ROUTE = re.compile(r"^/sessions/([A-Za-z0-9_.+@-]+)/(utterance|ratings|transcript)$")


def _session_payload(ctx: SessionContext, **extra) -> dict:
    return {"session_id": ctx.session_id, "state": ctx.state.value, **extra}


class _Handler(BaseHTTPRequestHandler):
    server_version = "tourdesk"

    @property
    def store(self) -> SessionStore:
        return self.server.store  # type: ignore[attr-defined]

    def log_message(self, format: str, *args) -> None:  # noqa: A002
        if self.server.verbose:  # type: ignore[attr-defined]
            super().log_message(format, *args)

    def _send(self, status: int, payload: dict) -> None:
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _read_body(self) -> Optional[dict]:
        length = int(self.headers.get("Content-Length") or 0)
        if length == 0:
            return {}
        try:
            payload = json.loads(self.rfile.read(length).decode("utf-8"))
        except (ValueError, UnicodeDecodeError):
            return None
        return payload if isinstance(payload, dict) else None

    def do_OPTIONS(self) -> None:  # CORS preflight for the browser client
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_GET(self) -> None:
        if self.path == "/metrics":
            self._get_metrics()
            return
        if self.path == "/catalog":
            self._get_catalog()
            return
        if self.path == "/questionnaire":
            self._send(200, {"items": self.server.impression_items})  # type: ignore[attr-defined]
            return
        match = _SESSION_ROUTE.match(self.path)
        if match and match.group(2) == "transcript":
            self._get_transcript(match.group(1))
            return
        self._send(404, {"error": f"no route for GET {self.path}"})

    def do_POST(self) -> None:
        body = self._read_body()
        if body is None:
            self._send(400, {"error": "request body must be a JSON object"})
            return
        if self.path == "/sessions":
            self._create_session(body)
            return
        match = _SESSION_ROUTE.match(self.path)
        if match:
            session_id, action = match.groups()
            if action == "utterance":
                self._post_utterance(session_id, body)
                return
            if action == "ratings":
                self._post_ratings(session_id, body)
                return
        self._send(404, {"error": f"no route for POST {self.path}"})

    # -- endpoint bodies -------------------------------------------------

    def _create_session(self, body: dict) -> None:
        try:
            choice_a = body["choice_a"]
            choice_b = body["choice_b"]
        except KeyError as exc:
            self._send(400, {"error": f"missing field {exc}"})
            return
        seed = body.get("seed")
        venue = body.get("venue")
        try:
            ctx, turn = self.store.create(choice_a, choice_b, seed=seed, venue=venue)
        except ValueError as exc:
            self._send(400, {"error": str(exc)})
            return
        self._send(201, _session_payload(ctx, robot_turn=turn.to_dict()))

    def _post_utterance(self, session_id: str, body: dict) -> None:
        text = body.get("text")
        if text is not None and not isinstance(text, str):
            self._send(400, {"error": "text must be a string when present"})
            return
        try:
            ctx, turn = self.store.step(session_id, text)
        except UnknownSessionError:
            self._send(404, {"error": f"unknown session {session_id!r}"})
            return
        except SessionDoneError as exc:
            self._send(409, {"error": str(exc)})
            return
        self._send(200, _session_payload(ctx, robot_turn=turn.to_dict()))

    def _post_ratings(self, session_id: str, body: dict) -> None:
        try:
            pre = float(body["pre"])
            post = float(body["post"])
            impressions = [int(x) for x in body["impressions"]]
        except (KeyError, TypeError, ValueError):
            self._send(400, {"error": "ratings body needs pre, post and impressions[9]"})
            return
        try:
            effect = self.store.submit_ratings(session_id, pre, post, impressions)
        except UnknownSessionError:
            self._send(404, {"error": f"unknown session {session_id!r}"})
            return
        except SessionNotFinishedError as exc:
            self._send(409, {"error": str(exc)})
            return
        except ValueError as exc:
            self._send(400, {"error": str(exc)})
            return
        ctx = self.store.context(session_id)
        self._send(200, _session_payload(ctx, recommendation_effect=effect))

    def _get_transcript(self, session_id: str) -> None:
        try:
            turns = self.store.transcript(session_id)
        except UnknownSessionError:
            self._send(404, {"error": f"unknown session {session_id!r}"})
            return
        ctx = self.store.context(session_id)
        self._send(200, _session_payload(ctx, turns=[t.to_dict() for t in turns]))

    def _get_metrics(self) -> None:
        items = self.server.impression_items  # type: ignore[attr-defined]
        if self.store.rated_count() == 0:
            self._send(200, {"count": 0, "recommendation_effect_mean": None,
                             "item_means": None, "items": items})
            return
        report = self.store.metrics()
        self._send(200, {
            "count": report.count,
            "recommendation_effect_mean": report.effect_mean,
            "item_means": list(report.item_means),
            "items": items,
        })

    def _get_catalog(self) -> None:
        attractions = [
            {"id": record.id, "name": record.name}
            for record in self.store.engine.catalog.attractions
        ]
        self._send(200, {"attractions": attractions})


class DialogueServer:
    """Threading HTTP server around a SessionStore; usable from tests and the CLI."""

    def __init__(
        self,
        engine: DialogueEngine,
        data_dir,
        impression_items: list[str],
        host: str = "127.0.0.1",
        port: int = 8640,
        verbose: bool = False,
    ):
        self.store = SessionStore(engine, data_dir)
        self.httpd = ThreadingHTTPServer((host, port), _Handler)
        self.httpd.store = self.store  # type: ignore[attr-defined]
        self.httpd.impression_items = impression_items  # type: ignore[attr-defined]
        self.httpd.verbose = verbose  # type: ignore[attr-defined]
        self._thread: Optional[threading.Thread] = None

    @property
    def port(self) -> int:
        return self.httpd.server_address[1]

    def start(self) -> None:
        self._thread = threading.Thread(
            target=self.httpd.serve_forever, kwargs={"poll_interval": 0.05}, daemon=True
        )
        self._thread.start()

    def serve_forever(self) -> None:
        self.httpd.serve_forever()

    def stop(self) -> None:
        self.httpd.shutdown()
        self.httpd.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)
            self._thread = None
