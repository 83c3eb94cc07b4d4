"""The dialogue states, in scenario order (linear flow with QnA self-loops)."""
from __future__ import annotations

from enum import Enum


class DialogueState(Enum):
    GREETING = "Greeting"
    ICE_BREAKER = "IceBreaker"
    MEMORABLE_SPOT = "MemorableSpot"
    MEMORABLE_SPOT_FOLLOW_UP = "MemorableSpotFollowUp"
    EXPLAIN_A = "ExplainA"
    QNA_A = "QnA_A"
    EXPLAIN_B = "ExplainB"
    QNA_B = "QnA_B"
    RECOMMENDATION = "Recommendation"
    CLOSING = "Closing"
    DONE = "Done"


STATE_ORDER = list(DialogueState)
STATE_INDEX = {state: index for index, state in enumerate(STATE_ORDER)}


def next_state(state: DialogueState) -> DialogueState:
    return STATE_ORDER[STATE_INDEX[state] + 1]
