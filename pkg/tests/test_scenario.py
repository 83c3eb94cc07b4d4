from __future__ import annotations

import json

import pytest

from tourdesk.assets import build_engine, bundled
from tourdesk.intent import IntentCategory, Stage
from tourdesk.motion import MotionKind
from tourdesk.scenario import (
    ScenarioTemplates,
    SessionContext,
    SessionDoneError,
    Speaker,
    TemplateError,
    TurnRecord,
)
from tourdesk.scenario_states import STATE_INDEX, DialogueState

from dialogue_helpers import GOLDEN_SCRIPT, fixed_clock, normalized_transcript_json, run_script


@pytest.fixture(scope="module")
def engine():
    return build_engine(clock=fixed_clock)


def advance_to(engine, state: DialogueState, script=GOLDEN_SCRIPT):
    ctx, _ = engine.start_session("aquarium", "onsen", seed=1, venue="Miraikan")
    for utterance in script:
        if ctx.state is state:
            return ctx
        engine.step(ctx, utterance)
    raise AssertionError(f"script never reached {state}")


def test_start_session_greets_with_venue(engine):
    ctx, turn = engine.start_session("aquarium", "onsen", seed=1, venue="Miraikan")
    assert "Miraikan" in turn.text
    assert turn.state is DialogueState.GREETING
    assert ctx.state is DialogueState.GREETING
    assert ctx.recommended in {"aquarium", "onsen"}


def test_start_session_rejects_equal_choices(engine):
    with pytest.raises(ValueError):
        engine.start_session("aquarium", "aquarium", seed=1)


def test_start_session_rejects_unknown_choice(engine):
    with pytest.raises(ValueError):
        engine.start_session("aquarium", "atlantis", seed=1)


def test_start_session_is_deterministic(engine):
    first_ctx, first_turn = engine.start_session("aquarium", "onsen", seed=5)
    second_ctx, second_turn = engine.start_session("aquarium", "onsen", seed=5)
    assert first_ctx.recommended == second_ctx.recommended
    assert first_ctx.session_id == second_ctx.session_id
    assert first_turn == second_turn


def test_recommended_is_a_fixed_function_of_seed(engine):
    draws = {seed: engine.start_session("aquarium", "onsen", seed=seed)[0].recommended for seed in range(20)}
    again = {seed: engine.start_session("aquarium", "onsen", seed=seed)[0].recommended for seed in range(20)}
    assert draws == again
    assert set(draws.values()) == {"aquarium", "onsen"}


def test_recommendation_draw_is_roughly_uniform(engine):
    counts = {"aquarium": 0, "onsen": 0}
    for seed in range(1000):
        ctx, _ = engine.start_session("aquarium", "onsen", seed=seed)
        counts[ctx.recommended] += 1
    assert 450 <= counts["aquarium"] <= 550
    assert 450 <= counts["onsen"] <= 550


def test_memorable_spot_fills_slot_and_followup_mentions_it(engine):
    ctx = advance_to(engine, DialogueState.MEMORABLE_SPOT)
    _, turn = engine.step(ctx, "私が最も印象に残っている観光地は京都です")
    assert ctx.memorable == "京都"
    assert turn.state is DialogueState.MEMORABLE_SPOT_FOLLOW_UP
    assert "京都" in turn.text


def test_memory_update_line_follows_the_followup_answer(engine):
    ctx = advance_to(engine, DialogueState.MEMORABLE_SPOT)
    engine.step(ctx, "私が最も印象に残っている観光地は京都です")
    _, turn = engine.step(ctx, "お寺がきれいでした")
    assert turn.state is DialogueState.EXPLAIN_A
    assert "updated my memory about 京都" in turn.text


def test_silent_memorable_spot_defaults(engine):
    ctx = advance_to(engine, DialogueState.MEMORABLE_SPOT)
    _, turn = engine.step(ctx, None)
    assert ctx.memorable == "そこ"
    assert "そこ" in turn.text


def test_price_question_in_qna_a_answers_and_stays(engine):
    ctx = advance_to(engine, DialogueState.QNA_A)
    _, turn = engine.step(ctx, "料金はいくらですか")
    assert ctx.state is DialogueState.QNA_A
    assert "大人500円" in turn.text  # attraction A is the aquarium
    customer = ctx.transcript[-2]
    assert customer.speaker is Speaker.CUSTOMER
    assert customer.classification.category is IntentCategory.PRICE


def test_no_question_advances_to_explain_b(engine):
    ctx = advance_to(engine, DialogueState.QNA_A)
    _, turn = engine.step(ctx, "特にありません")
    assert ctx.state is DialogueState.EXPLAIN_B
    assert turn.state is DialogueState.EXPLAIN_B


def test_silence_in_qna_counts_as_no_question(engine):
    ctx = advance_to(engine, DialogueState.QNA_A)
    engine.step(ctx, None)
    assert ctx.state is DialogueState.EXPLAIN_B
    customer = ctx.transcript[-2]
    assert customer.classification.category is IntentCategory.NO_QUESTION
    assert customer.classification.stage is Stage.FALLBACK


def test_question_loop_is_bounded_by_max_questions(engine):
    ctx = advance_to(engine, DialogueState.QNA_A)
    for _ in range(engine.max_questions):
        engine.step(ctx, "料金はいくらですか")
        assert ctx.state is DialogueState.QNA_A
    engine.step(ctx, "駐車場はありますか")  # over the bound: advances unanswered
    assert ctx.state is DialogueState.EXPLAIN_B
    assert ctx.question_counts[DialogueState.QNA_A] == engine.max_questions


def test_recommendation_presents_recommended_with_highlights(engine):
    ctx = advance_to(engine, DialogueState.QNA_B)
    _, turn = engine.step(ctx, "特にありません")
    assert turn.state is DialogueState.RECOMMENDATION
    record = engine.catalog.get(ctx.recommended)
    assert record.name in turn.text
    assert record.highlights[0] in turn.text


def test_closing_says_master_once_and_finishes(engine):
    ctx = run_script(engine, GOLDEN_SCRIPT)
    assert ctx.state is DialogueState.DONE
    assert ctx.master_quirk_used
    master_turns = [
        t for t in ctx.transcript if t.speaker is Speaker.ROBOT and "master" in t.text
    ]
    assert len(master_turns) == 1
    assert master_turns[0].state is DialogueState.CLOSING


def test_step_after_done_raises(engine):
    ctx = run_script(engine, GOLDEN_SCRIPT)
    with pytest.raises(SessionDoneError):
        engine.step(ctx, "hello")


def test_transcript_of_new_session_is_greeting_only(engine):
    ctx, _ = engine.start_session("aquarium", "onsen", seed=1)
    transcript = engine.transcript(ctx)
    assert len(transcript) == 1
    assert transcript[0].speaker is Speaker.ROBOT


def test_step_appends_customer_and_robot_turns(engine):
    ctx, _ = engine.start_session("aquarium", "onsen", seed=1)
    engine.step(ctx, "こんにちは")
    transcript = engine.transcript(ctx)
    assert len(transcript) == 3
    assert [t.speaker for t in transcript] == [Speaker.ROBOT, Speaker.CUSTOMER, Speaker.ROBOT]


def test_completed_session_visits_all_states_in_order(engine):
    ctx = run_script(engine, GOLDEN_SCRIPT)
    assert ctx.state_history == list(DialogueState)


def test_state_index_never_decreases_except_qna_self_loops(engine):
    ctx = run_script(engine, GOLDEN_SCRIPT)
    robot_states = [t.state for t in ctx.transcript if t.speaker is Speaker.ROBOT]
    for prev, nxt in zip(robot_states, robot_states[1:]):
        assert STATE_INDEX[nxt] >= STATE_INDEX[prev]
        if STATE_INDEX[nxt] == STATE_INDEX[prev]:
            assert prev in (DialogueState.QNA_A, DialogueState.QNA_B)


def test_every_robot_turn_carries_motions(engine):
    ctx = run_script(engine, GOLDEN_SCRIPT)
    for turn in ctx.transcript:
        if turn.speaker is Speaker.ROBOT:
            assert turn.motions
        else:
            assert turn.motions == []


def test_nod_only_on_question_turns(engine):
    ctx = run_script(engine, GOLDEN_SCRIPT)
    for turn in ctx.transcript:
        nods = [m for m in turn.motions if m.kind is MotionKind.NOD]
        if turn.state in (DialogueState.EXPLAIN_A, DialogueState.EXPLAIN_B,
                          DialogueState.RECOMMENDATION, DialogueState.CLOSING,
                          DialogueState.GREETING):
            assert not nods
        if turn.speaker is Speaker.ROBOT and turn.state is DialogueState.QNA_A:
            assert nods


def test_transcript_is_deterministic_for_fixed_seed_and_script(engine):
    first = run_script(engine, GOLDEN_SCRIPT)
    second = run_script(engine, GOLDEN_SCRIPT)
    assert normalized_transcript_json(first) == normalized_transcript_json(second)


def test_turn_record_dict_round_trip(engine):
    ctx = run_script(engine, GOLDEN_SCRIPT)
    for turn in ctx.transcript:
        assert TurnRecord.from_dict(turn.to_dict()) == turn


def test_session_snapshot_round_trip(engine):
    ctx = run_script(engine, GOLDEN_SCRIPT[:6])
    restored = SessionContext.from_snapshot(ctx.snapshot(), list(ctx.transcript))
    assert restored.snapshot() == ctx.snapshot()
    assert restored.transcript == ctx.transcript
    # the restored context keeps stepping identically
    engine.step(ctx, "特にありません")
    engine.step(restored, "特にありません")
    assert normalized_transcript_json(ctx) == normalized_transcript_json(restored)


def test_templates_reject_master_token_outside_closing():
    with open(bundled("templates.json"), encoding="utf-8") as f:
        doc = json.load(f)
    doc["states"]["Greeting"].append("hello master")
    with pytest.raises(TemplateError):
        ScenarioTemplates(
            {DialogueState(k): v for k, v in doc["states"].items()},
            doc["answers"],
            doc["master_token"],
        )


def test_templates_require_lines_for_every_state():
    with open(bundled("templates.json"), encoding="utf-8") as f:
        doc = json.load(f)
    del doc["states"]["IceBreaker"]
    with pytest.raises(TemplateError):
        ScenarioTemplates(
            {DialogueState(k): v for k, v in doc["states"].items()},
            doc["answers"],
            doc["master_token"],
        )


def test_templates_reject_unknown_placeholder():
    with open(bundled("templates.json"), encoding="utf-8") as f:
        doc = json.load(f)
    doc["states"]["Greeting"] = ["hello {nonsense}"]
    with pytest.raises(TemplateError):
        ScenarioTemplates(
            {DialogueState(k): v for k, v in doc["states"].items()},
            doc["answers"],
            doc["master_token"],
        )


def test_japanese_template_variant_loads_and_runs():
    from tourdesk.assets import EnginePaths

    paths = EnginePaths.with_defaults(templates=bundled("templates_ja.json"))
    engine_ja = build_engine(paths, clock=fixed_clock)
    ctx = run_script(engine_ja, GOLDEN_SCRIPT)
    assert ctx.state is DialogueState.DONE
    closing = [t for t in ctx.transcript if t.state is DialogueState.CLOSING]
    assert "マスター" in closing[0].text
