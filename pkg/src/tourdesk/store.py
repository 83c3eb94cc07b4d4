"""Session persistence and per-session step serialization.

Each session is one append-only JSONL file under ``<data_dir>/sessions/``:
a header record, then one record per turn, a state snapshot after every step,
and finally the ratings record. On startup the in-memory index is rebuilt by
replaying those files, so transcripts and metrics survive restarts. A lock per
session serializes engine steps; distinct sessions run concurrently.
"""
from __future__ import annotations

import json
import threading
import uuid
from pathlib import Path
from typing import Optional, Union

from .metrics import AggregateReport, DesireRating, ImpressionResponse, aggregate, recommendation_effect
from .scenario import DialogueEngine, SessionContext, TurnRecord
from .scenario_states import DialogueState


class UnknownSessionError(KeyError):
    """No session with that id."""


class SessionNotFinishedError(RuntimeError):
    """Ratings were submitted before the dialogue reached Done."""


class _Runtime:
    def __init__(self, ctx: SessionContext):
        self.ctx = ctx
        self.lock = threading.Lock()
        self.ratings: Optional[tuple[DesireRating, ImpressionResponse]] = None


class SessionStore:
    def __init__(self, engine: DialogueEngine, data_dir: Union[str, Path]):
        self.engine = engine
        self.sessions_dir = Path(data_dir) / "sessions"
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, _Runtime] = {}
        self._index_lock = threading.Lock()
        self._load_existing()

    # -- persistence ---------------------------------------------------

    def _log_path(self, session_id: str) -> Path:
        return self.sessions_dir / f"{session_id}.log"

    def _append(self, session_id: str, record: dict) -> None:
        with open(self._log_path(session_id), "a", encoding="utf-8") as f:
            f.write(json.dumps(record, ensure_ascii=False) + "\n")

    def _load_existing(self) -> None:
        for path in sorted(self.sessions_dir.glob("*.log")):
            header: Optional[dict] = None
            snapshot: Optional[dict] = None
            turns: list[TurnRecord] = []
            ratings: Optional[tuple[DesireRating, ImpressionResponse]] = None
            with open(path, encoding="utf-8") as f:
                for line in f:
                    if not line.strip():
                        continue
                    record = json.loads(line)
                    kind = record.get("type")
                    if kind == "session":
                        header = record
                    elif kind == "turn":
                        turns.append(TurnRecord.from_dict(record))
                    elif kind == "state":
                        snapshot = record
                    elif kind == "ratings":
                        ratings = (
                            DesireRating(record["pre"], record["post"]),
                            ImpressionResponse(tuple(record["impressions"])),
                        )
            if header is None:
                continue
            if snapshot is None:
                # session persisted right after start: rebuild from the header
                snapshot = {
                    "session_id": header["session_id"],
                    "choice_a": header["choice_a"],
                    "choice_b": header["choice_b"],
                    "recommended": header["recommended"],
                    "rng_seed": header["seed"],
                    "venue": header["venue"],
                    "state": DialogueState.GREETING.value,
                    "memorable": self.engine.default_spot,
                    "question_counts": {},
                    "master_quirk_used": False,
                    "state_history": [DialogueState.GREETING.value],
                }
            ctx = SessionContext.from_snapshot(snapshot, turns)
            runtime = _Runtime(ctx)
            runtime.ratings = ratings
            self._sessions[ctx.session_id] = runtime

    # -- operations ----------------------------------------------------

    def create(
        self,
        choice_a: str,
        choice_b: str,
        seed: Optional[int] = None,
        venue: Optional[str] = None,
    ) -> tuple[SessionContext, TurnRecord]:
        if seed is None:
            seed = int.from_bytes(uuid.uuid4().bytes[:4], "big")
        session_id = uuid.uuid4().hex[:12]
        kwargs = {"venue": venue} if venue is not None else {}
        ctx, turn = self.engine.start_session(choice_a, choice_b, seed, session_id=session_id, **kwargs)
        with self._index_lock:
            self._sessions[session_id] = _Runtime(ctx)
        self._append(session_id, {
            "type": "session",
            "session_id": session_id,
            "choice_a": choice_a,
            "choice_b": choice_b,
            "recommended": ctx.recommended,
            "seed": seed,
            "venue": ctx.venue,
        })
        self._append(session_id, {"type": "turn", **turn.to_dict()})
        return ctx, turn

    def _runtime(self, session_id: str) -> _Runtime:
        with self._index_lock:
            try:
                return self._sessions[session_id]
            except KeyError:
                raise UnknownSessionError(session_id) from None

    def step(self, session_id: str, utterance: Optional[str]) -> tuple[SessionContext, TurnRecord]:
        runtime = self._runtime(session_id)
        with runtime.lock:
            before = len(runtime.ctx.transcript)
            _, turn = self.engine.step(runtime.ctx, utterance)
            for new_turn in runtime.ctx.transcript[before:]:
                self._append(session_id, {"type": "turn", **new_turn.to_dict()})
            self._append(session_id, {"type": "state", **runtime.ctx.snapshot()})
            return runtime.ctx, turn

    def submit_ratings(
        self,
        session_id: str,
        pre: float,
        post: float,
        impressions: list[int],
    ) -> float:
        runtime = self._runtime(session_id)
        with runtime.lock:
            if runtime.ctx.state is not DialogueState.DONE:
                raise SessionNotFinishedError(f"session {session_id} is still in {runtime.ctx.state.value}")
            rating = DesireRating(pre, post)
            response = ImpressionResponse(tuple(impressions))
            runtime.ratings = (rating, response)
            effect = recommendation_effect(rating)
            self._append(session_id, {
                "type": "ratings",
                "pre": pre,
                "post": post,
                "impressions": list(impressions),
                "recommendation_effect": effect,
            })
            return effect

    def context(self, session_id: str) -> SessionContext:
        return self._runtime(session_id).ctx

    def transcript(self, session_id: str) -> list[TurnRecord]:
        runtime = self._runtime(session_id)
        with runtime.lock:
            return list(runtime.ctx.transcript)

    def session_ids(self) -> list[str]:
        with self._index_lock:
            return list(self._sessions)

    def metrics(self) -> AggregateReport:
        with self._index_lock:
            rated = [rt.ratings for rt in self._sessions.values() if rt.ratings is not None]
        return aggregate(rated)

    def rated_count(self) -> int:
        with self._index_lock:
            return sum(1 for rt in self._sessions.values() if rt.ratings is not None)
