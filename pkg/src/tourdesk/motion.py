"""Symbolic motion directives bound to turn phases.

The robot nods only while awaiting an answer to a question it asked, never
while speaking (that would collide with the customer's turn). While speaking
about an attraction it turns toward that attraction's monitor; otherwise it
faces the customer.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .scenario_states import DialogueState


class MotionKind(Enum):
    NOD = "Nod"
    GAZE_MONITOR_A = "GazeMonitorA"
    GAZE_MONITOR_B = "GazeMonitorB"
    GAZE_CUSTOMER = "GazeCustomer"


class TurnPhase(Enum):
    SPEAKING = "Speaking"
    AWAITING_ANSWER = "AwaitingAnswer"


@dataclass(frozen=True)
class MotionEvent:
    kind: MotionKind
    phase: TurnPhase

    def __post_init__(self) -> None:
        if self.kind is MotionKind.NOD and self.phase is not TurnPhase.AWAITING_ANSWER:
            raise ValueError("a nod is only valid while awaiting an answer")


# states in which the robot asks the customer for a response
QUESTION_STATES = frozenset(
    {
        DialogueState.ICE_BREAKER,
        DialogueState.MEMORABLE_SPOT,
        DialogueState.MEMORABLE_SPOT_FOLLOW_UP,
        DialogueState.QNA_A,
        DialogueState.QNA_B,
    }
)

_MONITOR_A_STATES = frozenset({DialogueState.EXPLAIN_A, DialogueState.QNA_A})
_MONITOR_B_STATES = frozenset({DialogueState.EXPLAIN_B, DialogueState.QNA_B})


def motions_for(state: DialogueState, phase: TurnPhase) -> list[MotionEvent]:
    """Motion events for one turn phase in one dialogue state."""
    if phase is TurnPhase.SPEAKING:
        if state in _MONITOR_A_STATES:
            return [MotionEvent(MotionKind.GAZE_MONITOR_A, phase)]
        if state in _MONITOR_B_STATES:
            return [MotionEvent(MotionKind.GAZE_MONITOR_B, phase)]
        return [MotionEvent(MotionKind.GAZE_CUSTOMER, phase)]
    if state in QUESTION_STATES:
        return [MotionEvent(MotionKind.GAZE_CUSTOMER, phase), MotionEvent(MotionKind.NOD, phase)]
    return [MotionEvent(MotionKind.GAZE_CUSTOMER, phase)]
