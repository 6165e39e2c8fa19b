"""Command-line interface: corpus validation, experiment runs, revision
runs, KB inspection, and an interactive tutor loop.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from .classify import classify
from .corpus import CorpusError, Question, load_documents, load_qa_corpus
from .evaluation import export_series, running_metrics
from .extraction import extract_ner, load_gazetteer
from .knowledge import (MAX_PATTERN_ELEMENTS, SIGNATURE_DEPTH, KnowledgeBase,
                        load_kb, question_signature, save_kb)
from .pipeline import (PipelineState, RevisionSchedule, ScenarioConfig,
                       apply_feedback, pattern_candidates, run_sequence)
from .retrieval import build_index, content_words, retrieve, serialize_index
from .treebank import TreeFormatError, leaves, parse_bracketed
from .unification import default_config


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="patternqa", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="validate corpora")
    ingest.add_argument("--corpus")
    ingest.add_argument("--docs")

    run = sub.add_parser("run", help="run an experiment scenario")
    run.add_argument("--scenario", type=int, choices=(1, 2, 3, 4))
    run.add_argument("--corpus")
    run.add_argument("--docs")
    run.add_argument("--revise-interval", type=int, default=None)
    run.add_argument("--no-learn-on-revision", action="store_true")
    run.add_argument("--kb-in", default=None)
    run.add_argument("--kb-out", default=None)
    run.add_argument("--top-k", type=int, default=20)
    run.add_argument("--relax-measure", choices=("levenshtein", "overlap", "jaccard"),
                     default="levenshtein")
    run.add_argument("--relax-threshold", type=float, default=None)
    run.add_argument("--no-lexical-relax", action="store_true")
    run.add_argument("--no-syntactic-relax", action="store_true")
    run.add_argument("--out-dir", default=None)
    run.add_argument("--dump-index", default=None,
                     help="also write the inverted index as JSON for inspection")
    run.add_argument("--from-metadata", default=None,
                     help="re-run a previous experiment from its metadata file")

    tutor = sub.add_parser("tutor", help="interactive teaching loop")
    tutor.add_argument("--docs", required=True)
    tutor.add_argument("--kb-in", default=None)
    tutor.add_argument("--kb-out", default=None)
    tutor.add_argument("--use-ner", action="store_true")
    tutor.add_argument("--top-k", type=int, default=20)

    stats = sub.add_parser("stats", help="inspect a knowledge base / outcome log")
    stats.add_argument("--kb-in", required=True)
    stats.add_argument("--outcomes", default=None)
    return parser


def _sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _require_file(path, what) -> Path:
    if path is None:
        raise UsageError(f"--{what} is required")
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"{what} file not found: {path}")
    return p


def cmd_ingest(args) -> int:
    if args.corpus is None and args.docs is None:
        raise UsageError("nothing to ingest; pass --corpus and/or --docs")
    if args.corpus:
        questions = load_qa_corpus(_require_file(args.corpus, "corpus"))
        print(f"corpus ok: {len(questions)} questions")
    if args.docs:
        docs = load_documents(_require_file(args.docs, "docs"))
        sentences = sum(len(d.sentences) for d in docs)
        print(f"docs ok: {len(docs)} documents, {sentences} sentences")
    return 0


def _candidate_record(cand) -> dict:
    return {
        "text": cand.text,
        "span": list(cand.span),
        "strategy": cand.strategy,
        "relaxation": cand.relaxation_used,
        "doc_id": cand.doc_id,
        "position": cand.position,
        "pattern": cand.pattern_provenance,
    }


def _outcome_record(outcome) -> dict:
    return {
        "id": outcome.question_id,
        "category": outcome.category,
        "correct": outcome.correct,
        "answered": outcome.answered,
        "fallback_used": outcome.fallback_used,
        "final": outcome.final,
        "final_strategy": outcome.final_strategy,
        "relaxation_used": outcome.relaxation_used,
        "patterns_learned": outcome.patterns_learned,
        "error": outcome.error,
        "candidates": [_candidate_record(c) for c in outcome.candidates],
    }


def cmd_run(args) -> int:
    if args.from_metadata:
        meta = json.loads(_require_file(args.from_metadata, "from-metadata").read_text("utf-8"))
        cfg = meta["config"]
        args.scenario = cfg["scenario"]
        args.corpus = cfg["corpus"]
        args.docs = cfg["docs"]
        args.top_k = cfg["top_k"]
        args.relax_measure = cfg["relax_measure"]
        args.relax_threshold = cfg["relax_threshold"]
        args.no_lexical_relax = not cfg["lexical_relax"]
        args.no_syntactic_relax = not cfg["syntactic_relax"]
        args.revise_interval = cfg["revise_interval"]
        args.no_learn_on_revision = not cfg["learn_on_revision"]
        args.kb_in = cfg["kb_in"]
    if args.scenario is None:
        raise UsageError("--scenario is required")
    scenario = ScenarioConfig.from_id(args.scenario)
    questions = load_qa_corpus(_require_file(args.corpus, "corpus"))
    docs = load_documents(_require_file(args.docs, "docs"))
    if args.revise_interval is not None and args.revise_interval < 1:
        raise UsageError("--revise-interval must be >= 1")

    relax = default_config(
        measure=args.relax_measure,
        threshold=args.relax_threshold,
        enable_lexical=not args.no_lexical_relax,
        enable_syntactic=not args.no_syntactic_relax,
    )
    kb = load_kb(args.kb_in) if args.kb_in else KnowledgeBase()
    index = build_index(docs)
    if args.dump_index:
        Path(args.dump_index).write_text(serialize_index(index) + "\n", "utf-8")
    state = PipelineState(
        kb=kb,
        index=index,
        gazetteer=load_gazetteer(),
        relax=relax,
        top_k=args.top_k,
    )
    schedule = RevisionSchedule(args.revise_interval) if args.revise_interval else None
    result = run_sequence(state, questions, scenario, schedule,
                          learn_on_revision=not args.no_learn_on_revision)

    out_dir = Path(args.out_dir) if args.out_dir else Path("out") / time.strftime("%Y%m%d-%H%M%S")
    out_dir.mkdir(parents=True, exist_ok=True)

    log_path = out_dir / "outcomes.jsonl"
    with open(log_path, "w", encoding="utf-8") as handle:
        for outcome in result.outcomes:
            handle.write(json.dumps(_outcome_record(outcome), sort_keys=True))
            handle.write("\n")

    base_points = running_metrics(result.outcomes)
    base_alt = running_metrics(result.outcomes, fallback_as_answered=True)
    export_series(base_points, out_dir / f"scenario{scenario.id}_metrics.csv", base_alt)
    if schedule:
        export_series(result.points, out_dir / f"revision_i{schedule.interval}.csv",
                      result.alt_points)
        report = {
            "interval": schedule.interval,
            "checkpoints": [
                {
                    "checkpoint": r.checkpoint,
                    "retried": r.retried,
                    "newly_correct": r.newly_correct,
                    "patterns_learned": r.patterns_learned,
                }
                for r in result.revision
            ],
            "final_correct": result.points[-1].correct if result.points else 0,
        }
        (out_dir / "revision_report.json").write_text(
            json.dumps(report, indent=1, sort_keys=True) + "\n", "utf-8")

    metadata = {
        "config": {
            "scenario": scenario.id,
            "corpus": str(args.corpus),
            "docs": str(args.docs),
            "top_k": args.top_k,
            "relax_measure": relax.lexical_measure,
            "relax_threshold": relax.lexical_threshold,
            "lexical_relax": relax.enable_lexical,
            "syntactic_relax": relax.enable_syntactic,
            "revise_interval": args.revise_interval,
            "learn_on_revision": not args.no_learn_on_revision,
            "kb_in": args.kb_in,
            "max_pattern_elements": MAX_PATTERN_ELEMENTS,
            "signature_depth": SIGNATURE_DEPTH,
            "oracle_tie_break": "first candidate in (pattern-before-ner, sentence rank, span) order",
        },
        "inputs": {
            "corpus_sha256": _sha256(args.corpus),
            "docs_sha256": _sha256(args.docs),
        },
    }
    (out_dir / "metadata.json").write_text(
        json.dumps(metadata, indent=1, sort_keys=True) + "\n", "utf-8")

    if args.kb_out:
        save_kb(state.kb, args.kb_out)

    final = result.points[-1] if result.points else None
    if final:
        print(f"scenario {scenario.id}: {len(questions)} questions, "
              f"P={final.p:.4f} R={final.r:.4f} F={final.f:.4f} "
              f"(correct={final.correct}, answered={final.answered})")
    print(f"outputs in {out_dir}")
    return 0


def _tutor_answer(state, question: Question, use_ner: bool):
    category = classify(question, state.hints)
    sentences = retrieve(state.index, content_words(question.parse), state.top_k)
    state.sentence_cache[question.id] = sentences
    signature_patterns = state.kb.lookup(question_signature(question, category))
    candidates = []
    if signature_patterns:
        candidates.extend(pattern_candidates(signature_patterns, sentences, state.relax))
    if use_ner:
        candidates.extend(extract_ner(category, sentences, state.gazetteer, state.regex_rules))
    return category, candidates


def cmd_tutor(args) -> int:
    docs = load_documents(_require_file(args.docs, "docs"))
    kb = load_kb(args.kb_in) if args.kb_in else KnowledgeBase()
    state = PipelineState(
        kb=kb,
        index=build_index(docs),
        gazetteer=load_gazetteer(),
        top_k=args.top_k,
    )
    counter = 0
    last: Question | None = None
    last_answer: str | None = None

    def prompt():
        print("> ", end="", flush=True)

    print("tutor ready. commands: ask <bracketed parse> | y | n | answer <text> | quit")
    prompt()
    for raw in sys.stdin:
        line = raw.strip()
        if not line:
            prompt()
            continue
        if line == "quit":
            break
        if line.startswith("ask "):
            counter += 1
            try:
                tree = parse_bracketed(line[4:].strip())
            except TreeFormatError as exc:
                print(f"cannot parse question: {exc}")
                prompt()
                continue
            last = Question(id=f"tutor-{counter}", text=" ".join(leaves(tree)), parse=tree)
            category, candidates = _tutor_answer(state, last, args.use_ner)
            last_answer = candidates[0].text if candidates else None
            print(f"category: {category}")
            if last_answer is None:
                print("no answer")
            else:
                print(f"answer: {last_answer}")
            for cand in candidates:
                print(f"  candidate: {cand.text} [{cand.strategy}, {cand.relaxation_used}]")
        elif line == "y":
            if last is None or last_answer is None:
                print("nothing to confirm")
            else:
                added = apply_feedback(state, last, last_answer)
                print(f"learned {added} new patterns")
        elif line == "n":
            print("marked wrong (use 'answer <text>' to teach the correct one)")
        elif line.startswith("answer "):
            if last is None:
                print("ask a question first")
            else:
                truth = line[len("answer "):].strip()
                added = apply_feedback(state, last, truth)
                print(f"learned {added} new patterns")
        else:
            print("commands: ask <bracketed parse> | y | n | answer <text> | quit")
        prompt()
    print()
    if args.kb_out:
        save_kb(state.kb, args.kb_out)
        print(f"kb saved to {args.kb_out} "
              f"({state.kb.pattern_count()} patterns, {len(state.kb.qa_pairs)} qa pairs)")
    return 0


def cmd_stats(args) -> int:
    kb = load_kb(_require_file(args.kb_in, "kb-in"))
    print(f"signatures: {len(kb.signatures())}")
    for signature in kb.signatures():
        print(f"  {signature.category} | {signature.structure_key}: "
              f"{len(kb.lookup(signature))} patterns")
    print(f"patterns total: {kb.pattern_count()}")
    print(f"qa pairs: {len(kb.qa_pairs)}")
    if args.outcomes:
        exact = relaxed = 0
        with open(_require_file(args.outcomes, "outcomes"), encoding="utf-8") as handle:
            for line in handle:
                if not line.strip():
                    continue
                record = json.loads(line)
                if record.get("correct") and record.get("final_strategy") == "pattern":
                    if record.get("relaxation_used") == "none":
                        exact += 1
                    else:
                        relaxed += 1
        print(f"pattern-extracted correct answers: {exact + relaxed} "
              f"(exact: {exact}, relaxed: {relaxed})")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {
            "ingest": cmd_ingest,
            "run": cmd_run,
            "tutor": cmd_tutor,
            "stats": cmd_stats,
        }[args.command]
        return handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (CorpusError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
