"""Command line: serve the HTTP API, chat in a terminal, replay scripted
sessions, and run the two language primitives directly.

Every data file has a bundled default, so `tourdesk repl` works immediately;
pass --embeddings/--catalog/... to swap any of them out.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .assets import EnginePaths, build_engine, load_impression_items
from .embeddings import load_embeddings
from .intent import classify, classify_wrd
from .metrics import DesireRating, ImpressionResponse, aggregate, render_report, save_report_figures
from .scenario import DialogueEngine, TurnRecord
from .scenario_states import DialogueState
from .service import DialogueServer
from .tokenizer import DEFAULT_SPOT, Gazetteer
from .wrd import AllTokensOutOfVocabulary, sentence_to_distribution, sentence_tokens, wrd_distance


def _add_data_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--embeddings", help="word2vec-style text embedding file")
    parser.add_argument("--catalog", help="attraction catalog JSON")
    parser.add_argument("--rules", help="keyword rules TSV")
    parser.add_argument("--refs", help="reference sentences TSV")
    parser.add_argument("--gazetteer", help="proper-noun list, one per line")
    parser.add_argument("--templates", help="robot line templates JSON")


def _paths(args: argparse.Namespace) -> EnginePaths:
    return EnginePaths.with_defaults(
        embeddings=args.embeddings,
        catalog=args.catalog,
        rules=args.rules,
        refs=args.refs,
        gazetteer=args.gazetteer,
        templates=args.templates,
    )


def _engine(args: argparse.Namespace) -> DialogueEngine:
    return build_engine(
        _paths(args),
        max_questions=args.max_questions,
        default_spot=args.default_spot,
    )


def _print_robot_turn(turn: TurnRecord, out) -> None:
    motions = ", ".join(m.kind.value for m in turn.motions)
    print(f"robot ({turn.state.value}) [{motions}]", file=out)
    for line in turn.text.splitlines():
        print(f"  {line}", file=out)


def cmd_serve(args: argparse.Namespace) -> int:
    engine = _engine(args)
    server = DialogueServer(
        engine,
        args.data_dir,
        load_impression_items(args.impression_items),
        host=args.host,
        port=args.port,
        verbose=args.verbose,
    )
    print(f"listening on http://{args.host}:{server.port} (data dir: {args.data_dir})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        print("bye")
    return 0


def _read_line(prompt: str) -> Optional[str]:
    try:
        return input(prompt)
    except EOFError:
        return None


def _prompt_float(prompt: str, low: float, high: float) -> Optional[float]:
    while True:
        raw = _read_line(prompt)
        if raw is None:
            return None
        try:
            value = float(raw)
        except ValueError:
            print(f"  enter a number between {low} and {high}")
            continue
        if low <= value <= high:
            return value
        print(f"  enter a number between {low} and {high}")


def cmd_repl(args: argparse.Namespace) -> int:
    engine = _engine(args)
    records = engine.catalog.attractions
    print("attractions:")
    for record in records:
        print(f"  {record.id}: {record.name}")
    choice_a = args.choice_a or _read_line("first choice id> ")
    choice_b = args.choice_b or _read_line("second choice id> ")
    if not choice_a or not choice_b:
        print("two attraction ids are required", file=sys.stderr)
        return 2

    pre = _prompt_float("desire to visit before the dialogue (0-100)> ", 0, 100)

    ctx, turn = engine.start_session(choice_a, choice_b, args.seed, args.venue)
    _print_robot_turn(turn, sys.stdout)
    while ctx.state is not DialogueState.DONE:
        raw = _read_line("you> ")
        utterance = raw if raw else None  # empty line or EOF = silence
        _, turn = engine.step(ctx, utterance)
        _print_robot_turn(turn, sys.stdout)

    if pre is None:
        return 0
    post = _prompt_float("desire to visit after the dialogue (0-100)> ", 0, 100)
    if post is None:
        return 0
    impressions = []
    for item in load_impression_items(args.impression_items):
        value = _prompt_float(f"{item} (1-7)> ", 1, 7)
        if value is None:
            return 0
        impressions.append(int(value))
    rating = DesireRating(pre, post)
    report = aggregate([(rating, ImpressionResponse(tuple(impressions)))])
    print(f"recommended attraction: {engine.catalog.get(ctx.recommended).name}")
    print(f"recommendation effect: {report.effect_mean:+.6f}")
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    engine = _engine(args)
    if args.no_keywords:
        result = classify_wrd(args.utterance, engine.refs, engine.table, engine.gazetteer)
    else:
        result = classify(args.utterance, engine.rules, engine.refs, engine.table, engine.gazetteer)
    distance = f"{result.distance:.6f}" if result.distance is not None else "-"
    matched = result.matched if result.matched is not None else "-"
    print(f"{result.category.value}\t{result.stage.value}\t{distance}\t{matched}")
    return 0


def cmd_wrd(args: argparse.Namespace) -> int:
    table = load_embeddings(args.embeddings) if args.embeddings else load_embeddings(
        EnginePaths.with_defaults().embeddings
    )
    gazetteer = (
        Gazetteer.from_file(args.gazetteer)
        if args.gazetteer
        else Gazetteer.from_file(EnginePaths.with_defaults().gazetteer)
    )
    try:
        s1 = sentence_to_distribution(sentence_tokens(args.sentence1, gazetteer), table)
        s2 = sentence_to_distribution(sentence_tokens(args.sentence2, gazetteer), table)
    except AllTokensOutOfVocabulary as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{wrd_distance(s1, s2):.6f}")
    return 0


def _load_ratings_file(path: str, script_count: int) -> list[tuple[DesireRating, ImpressionResponse]]:
    entries = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            data = json.loads(line)
            entries.append(
                (
                    DesireRating(float(data["pre"]), float(data["post"])),
                    ImpressionResponse(tuple(int(x) for x in data["impressions"])),
                )
            )
    if len(entries) == 1 and script_count > 1:
        entries = entries * script_count
    if len(entries) != script_count:
        raise ValueError(f"{path} has {len(entries)} ratings for {script_count} scripts")
    return entries


def cmd_eval(args: argparse.Namespace) -> int:
    engine = _engine(args)
    sessions = []
    for index, script_path in enumerate(args.script):
        lines = Path(script_path).read_text(encoding="utf-8").splitlines()
        ctx, turn = engine.start_session(
            args.choice_a, args.choice_b, args.seed + index, args.venue
        )
        print(f"=== session {index + 1}: {script_path} (seed {args.seed + index}) ===")
        _print_robot_turn(turn, sys.stdout)
        for line in lines:
            if ctx.state is DialogueState.DONE:
                break
            utterance = line if line.strip() else None
            print(f"you> {line}")
            _, turn = engine.step(ctx, utterance)
            _print_robot_turn(turn, sys.stdout)
        if ctx.state is not DialogueState.DONE:
            print(f"warning: script ended before the session finished (state {ctx.state.value})",
                  file=sys.stderr)
        sessions.append(ctx)

    if not args.ratings:
        print("\nno --ratings file given; skipping the aggregate report")
        return 0

    ratings = _load_ratings_file(args.ratings, len(args.script))
    report = aggregate(ratings)
    items = load_impression_items(args.impression_items)
    text = render_report(report, items)
    print()
    print(text, end="")
    if args.report_dir:
        out = Path(args.report_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.tsv").write_text(text, encoding="utf-8")
        written = save_report_figures(report, items, out)
        for path in [out / "report.tsv"] + written:
            print(f"wrote {path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tourdesk",
        description="counter-sales dialogue engine for choosing between two tourist destinations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP session service")
    _add_data_flags(serve)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8640)
    serve.add_argument("--data-dir", default="./tourdesk-data")
    serve.add_argument("--impression-items", help="questionnaire items file (9 lines)")
    serve.add_argument("--max-questions", type=int, default=3)
    serve.add_argument("--default-spot", default=DEFAULT_SPOT)
    serve.add_argument("--verbose", action="store_true")
    serve.set_defaults(func=cmd_serve)

    repl = sub.add_parser("repl", help="run one session as a terminal chat")
    _add_data_flags(repl)
    repl.add_argument("--choice-a", help="first attraction id")
    repl.add_argument("--choice-b", help="second attraction id")
    repl.add_argument("--seed", type=int, default=0)
    repl.add_argument("--venue", default="Miraikan")
    repl.add_argument("--impression-items")
    repl.add_argument("--max-questions", type=int, default=3)
    repl.add_argument("--default-spot", default=DEFAULT_SPOT)
    repl.set_defaults(func=cmd_repl)

    classify_p = sub.add_parser("classify", help="classify one customer question")
    _add_data_flags(classify_p)
    classify_p.add_argument("utterance")
    classify_p.add_argument("--no-keywords", action="store_true",
                            help="skip the keyword stage and use WRD only")
    classify_p.add_argument("--max-questions", type=int, default=3)
    classify_p.add_argument("--default-spot", default=DEFAULT_SPOT)
    classify_p.set_defaults(func=cmd_classify)

    wrd_p = sub.add_parser("wrd", help="Word Rotator's Distance between two sentences")
    wrd_p.add_argument("sentence1")
    wrd_p.add_argument("sentence2")
    wrd_p.add_argument("--embeddings")
    wrd_p.add_argument("--gazetteer")
    wrd_p.set_defaults(func=cmd_wrd)

    eval_p = sub.add_parser("eval", help="replay scripted sessions and print the report")
    _add_data_flags(eval_p)
    eval_p.add_argument("--script", action="append", required=True,
                        help="customer script: one utterance per line, blank line = silence "
                             "(repeatable)")
    eval_p.add_argument("--ratings",
                        help="JSONL with one {pre, post, impressions[9]} per script "
                             "(a single line is applied to every script)")
    eval_p.add_argument("--choice-a", default="aquarium")
    eval_p.add_argument("--choice-b", default="onsen")
    eval_p.add_argument("--seed", type=int, default=0)
    eval_p.add_argument("--venue", default="Miraikan")
    eval_p.add_argument("--impression-items")
    eval_p.add_argument("--report-dir", help="write report.tsv and figures here")
    eval_p.add_argument("--max-questions", type=int, default=3)
    eval_p.add_argument("--default-spot", default=DEFAULT_SPOT)
    eval_p.set_defaults(func=cmd_eval)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
