"""Deterministic counter-sales dialogue: a linear state machine with QnA self-loops.

Flow: Greeting -> IceBreaker -> MemorableSpot -> MemorableSpotFollowUp ->
ExplainA -> QnA_A -> ExplainB -> QnA_B -> Recommendation -> Closing -> Done.

One step consumes one customer utterance in the current state and emits one
robot turn: the next state's scripted lines, or an answer while a QnA state
self-loops. All robot text comes from a template file keyed by state, so the
two character quirks (the memory-update phrase after the follow-up answer and
the single "master" address in the closing) are plain template content that
the engine can assert on.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Callable, Optional, Union

from .embeddings import EmbeddingTable
from .intent import (
    ClassificationResult,
    IntentCategory,
    KeywordRule,
    ReferenceSet,
    Stage,
    classify,
)
from .knowledge import Catalog, answer
from .motion import QUESTION_STATES, MotionEvent, MotionKind, TurnPhase, motions_for
from .scenario_states import STATE_INDEX, STATE_ORDER, DialogueState, next_state
from .tokenizer import DEFAULT_SPOT, Gazetteer, memorable_spot

DEFAULT_VENUE = "Miraikan"
DEFAULT_MAX_QUESTIONS = 3

_TEMPLATE_KEYS = ("venue", "memorable", "name", "value", "highlights")


class SessionDoneError(RuntimeError):
    """Raised when stepping a session that already reached Done."""


class TemplateError(ValueError):
    """Raised when a template file violates its contract."""


class Speaker(Enum):
    CUSTOMER = "Customer"
    ROBOT = "Robot"


@dataclass(frozen=True)
class TurnRecord:
    speaker: Speaker
    text: str
    state: DialogueState
    classification: Optional[ClassificationResult]
    motions: list[MotionEvent]
    timestamp: str

    def to_dict(self) -> dict:
        classification = None
        if self.classification is not None:
            classification = {
                "category": self.classification.category.value,
                "stage": self.classification.stage.value,
                "distance": self.classification.distance,
                "matched": self.classification.matched,
            }
        return {
            "speaker": self.speaker.value,
            "text": self.text,
            "state": self.state.value,
            "classification": classification,
            "motions": [{"kind": m.kind.value, "phase": m.phase.value} for m in self.motions],
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TurnRecord":
        classification = None
        if data.get("classification") is not None:
            raw = data["classification"]
            classification = ClassificationResult(
                category=IntentCategory(raw["category"]),
                stage=Stage(raw["stage"]),
                distance=raw.get("distance"),
                matched=raw.get("matched"),
            )
        return cls(
            speaker=Speaker(data["speaker"]),
            text=data["text"],
            state=DialogueState(data["state"]),
            classification=classification,
            motions=[
                MotionEvent(MotionKind(m["kind"]), TurnPhase(m["phase"]))
                for m in data.get("motions", [])
            ],
            timestamp=data["timestamp"],
        )


@dataclass
class SessionContext:
    session_id: str
    choice_a: str
    choice_b: str
    recommended: str
    rng_seed: int
    venue: str
    state: DialogueState = DialogueState.GREETING
    memorable: str = DEFAULT_SPOT
    question_counts: dict[DialogueState, int] = field(default_factory=dict)
    transcript: list[TurnRecord] = field(default_factory=list)
    master_quirk_used: bool = False
    state_history: list[DialogueState] = field(default_factory=list)

    def snapshot(self) -> dict:
        """Everything needed to resume the session except the transcript."""
        return {
            "session_id": self.session_id,
            "choice_a": self.choice_a,
            "choice_b": self.choice_b,
            "recommended": self.recommended,
            "rng_seed": self.rng_seed,
            "venue": self.venue,
            "state": self.state.value,
            "memorable": self.memorable,
            "question_counts": {s.value: n for s, n in self.question_counts.items()},
            "master_quirk_used": self.master_quirk_used,
            "state_history": [s.value for s in self.state_history],
        }

    @classmethod
    def from_snapshot(cls, data: dict, transcript: list[TurnRecord]) -> "SessionContext":
        return cls(
            session_id=data["session_id"],
            choice_a=data["choice_a"],
            choice_b=data["choice_b"],
            recommended=data["recommended"],
            rng_seed=data["rng_seed"],
            venue=data["venue"],
            state=DialogueState(data["state"]),
            memorable=data["memorable"],
            question_counts={DialogueState(s): n for s, n in data["question_counts"].items()},
            transcript=transcript,
            master_quirk_used=data["master_quirk_used"],
            state_history=[DialogueState(s) for s in data["state_history"]],
        )


class ScenarioTemplates:
    """Robot lines per state plus the per-category answer templates.

    JSON schema: {"states": {state: [line, ...]}, "answers": {category: line,
    "missing": line}, "master_token": str}. Lines may use the placeholders
    {venue}, {memorable}, {name}, {value} and {highlights}.
    """

    def __init__(self, states: dict[DialogueState, list[str]], answers: dict[str, str], master_token: str):
        self.states = states
        self.answers = answers
        self.master_token = master_token
        self._validate()

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ScenarioTemplates":
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
        try:
            states = {DialogueState(name): list(lines) for name, lines in doc["states"].items()}
            answers = dict(doc["answers"])
            master_token = doc.get("master_token", "master")
        except (KeyError, ValueError) as exc:
            raise TemplateError(f"bad template document: {exc}") from None
        return cls(states, answers, master_token)

    def _validate(self) -> None:
        dummy = {key: "x" for key in _TEMPLATE_KEYS}
        for state in STATE_ORDER:
            if state is DialogueState.DONE:
                continue
            lines = self.states.get(state)
            if not lines:
                raise TemplateError(f"no template lines for state {state.value}")
            for line in lines:
                try:
                    line.format(**dummy)
                except (KeyError, IndexError) as exc:
                    raise TemplateError(f"bad placeholder in {state.value} line {line!r}: {exc}") from None
        for key in [c.value for c in IntentCategory if c is not IntentCategory.NO_QUESTION] + ["missing"]:
            if key not in self.answers:
                raise TemplateError(f"missing answer template {key!r}")
        if not self.master_token:
            raise TemplateError("master_token must be non-empty")
        for state, lines in self.states.items():
            has_master = any(self.master_token in line for line in lines)
            if state is DialogueState.CLOSING and not has_master:
                raise TemplateError("the closing lines must address the customer by the master token")
            if state is not DialogueState.CLOSING and has_master:
                raise TemplateError(f"master token may only appear in the closing lines, found in {state.value}")

    def render(self, state: DialogueState, context: dict[str, str]) -> list[str]:
        return [line.format(**context) for line in self.states[state]]


class DialogueEngine:
    """Pure dialogue logic over immutable data; one SessionContext per customer."""

    def __init__(
        self,
        catalog: Catalog,
        templates: ScenarioTemplates,
        rules: list[KeywordRule],
        refs: ReferenceSet,
        table: EmbeddingTable,
        gazetteer: Gazetteer,
        *,
        max_questions: int = DEFAULT_MAX_QUESTIONS,
        default_spot: str = DEFAULT_SPOT,
        clock: Optional[Callable[[], str]] = None,
    ):
        self.catalog = catalog
        self.templates = templates
        self.rules = rules
        self.refs = refs
        self.table = table
        self.gazetteer = gazetteer
        self.max_questions = max_questions
        self.default_spot = default_spot
        self.clock = clock or (lambda: datetime.now(timezone.utc).isoformat(timespec="milliseconds"))

    def start_session(
        self,
        choice_a: str,
        choice_b: str,
        seed: int,
        venue: str = DEFAULT_VENUE,
        session_id: Optional[str] = None,
    ) -> tuple[SessionContext, TurnRecord]:
        """Open a session: draw the recommended attraction and greet the customer."""
        if choice_a == choice_b:
            raise ValueError("the two chosen attractions must differ")
        for choice in (choice_a, choice_b):
            if choice not in self.catalog:
                raise ValueError(f"unknown attraction id {choice!r}")
        recommended = (choice_a, choice_b)[random.Random(seed).randrange(2)]
        ctx = SessionContext(
            session_id=session_id or f"{choice_a}+{choice_b}@{seed}",
            choice_a=choice_a,
            choice_b=choice_b,
            recommended=recommended,
            rng_seed=seed,
            venue=venue,
            memorable=self.default_spot,
        )
        ctx.state_history.append(DialogueState.GREETING)
        turn = self._speak(ctx, DialogueState.GREETING)
        return ctx, turn

    def step(self, ctx: SessionContext, utterance: Optional[str]) -> tuple[SessionContext, TurnRecord]:
        """Consume one customer utterance and emit the next robot turn."""
        if ctx.state is DialogueState.DONE:
            raise SessionDoneError(f"session {ctx.session_id} is finished")
        consumed_state = ctx.state

        classification: Optional[ClassificationResult] = None
        if consumed_state in (DialogueState.QNA_A, DialogueState.QNA_B):
            if utterance is None:
                # silence counts as no-question
                classification = ClassificationResult(IntentCategory.NO_QUESTION, Stage.FALLBACK)
            else:
                classification = classify(utterance, self.rules, self.refs, self.table, self.gazetteer)

        ctx.transcript.append(
            TurnRecord(
                speaker=Speaker.CUSTOMER,
                text=utterance or "",
                state=consumed_state,
                classification=classification,
                motions=[],
                timestamp=self.clock(),
            )
        )

        if consumed_state is DialogueState.MEMORABLE_SPOT:
            ctx.memorable = memorable_spot(utterance, self.gazetteer, self.default_spot)

        if classification is not None:
            asked = ctx.question_counts.get(consumed_state, 0)
            if classification.category is not IntentCategory.NO_QUESTION and asked < self.max_questions:
                record = self.catalog.get(self._attraction_for(ctx, consumed_state))
                ctx.question_counts[consumed_state] = asked + 1
                reply = answer(record, classification.category, self.templates.answers)
                invite = self.templates.render(consumed_state, self._render_context(ctx, consumed_state))
                turn = self._emit(ctx, consumed_state, "\n".join([reply] + invite))
                return ctx, turn

        new_state = next_state(consumed_state)
        ctx.state = new_state
        ctx.state_history.append(new_state)
        turn = self._speak(ctx, new_state)
        if new_state is DialogueState.CLOSING:
            ctx.master_quirk_used = True
            ctx.state = DialogueState.DONE
            ctx.state_history.append(DialogueState.DONE)
        return ctx, turn

    def transcript(self, ctx: SessionContext) -> list[TurnRecord]:
        return list(ctx.transcript)

    def _attraction_for(self, ctx: SessionContext, state: DialogueState) -> str:
        if state in (DialogueState.EXPLAIN_A, DialogueState.QNA_A):
            return ctx.choice_a
        if state in (DialogueState.EXPLAIN_B, DialogueState.QNA_B):
            return ctx.choice_b
        return ctx.recommended

    def _render_context(self, ctx: SessionContext, state: DialogueState) -> dict[str, str]:
        record = self.catalog.get(self._attraction_for(ctx, state))
        return {
            "venue": ctx.venue,
            "memorable": ctx.memorable,
            "name": record.name,
            "value": "",
            "highlights": "\n".join(record.highlights),
        }

    def _speak(self, ctx: SessionContext, state: DialogueState) -> TurnRecord:
        lines = self.templates.render(state, self._render_context(ctx, state))
        return self._emit(ctx, state, "\n".join(lines))

    def _emit(self, ctx: SessionContext, state: DialogueState, text: str) -> TurnRecord:
        motions = motions_for(state, TurnPhase.SPEAKING)
        if state in QUESTION_STATES:
            motions = motions + motions_for(state, TurnPhase.AWAITING_ANSWER)
        turn = TurnRecord(
            speaker=Speaker.ROBOT,
            text=text,
            state=state,
            classification=None,
            motions=motions,
            timestamp=self.clock(),
        )
        ctx.transcript.append(turn)
        return turn
