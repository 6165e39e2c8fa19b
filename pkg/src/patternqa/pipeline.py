"""Question-answering pipeline: interpret, retrieve, extract, learn.

Questions are processed strictly sequentially; the knowledge base grows
only between questions (and at revision checkpoints), so extraction for
any one question sees a frozen snapshot. Retrieved sentences are cached
per question and reused during revision, which keeps runs deterministic
and makes the provenance-exclusion rule testable.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .classify import Category, classify, load_hint_table
from .corpus import Question, normalize_answer
from .evaluation import EvalPoint, make_point
from .extraction import Gazetteer, extract_ner, load_regex_rules
from .knowledge import KnowledgeBase, Pattern, learn_patterns, question_signature
from .retrieval import Index, RetrievedSentence, content_words, retrieve
from .unification import RELAX_NONE, CandidateAnswer, RelaxConfig, default_config, unify


@dataclass(frozen=True)
class ScenarioConfig:
    id: int
    use_ner: bool
    use_patterns: bool
    reference_fallback: bool

    _TABLE = {
        1: (True, False, False),
        2: (False, True, True),
        3: (True, True, False),
        4: (True, True, True),
    }

    def __post_init__(self):
        if self._TABLE.get(self.id) != (self.use_ner, self.use_patterns, self.reference_fallback):
            raise ValueError(f"flags do not match scenario {self.id}")

    @classmethod
    def from_id(cls, scenario_id: int) -> "ScenarioConfig":
        if scenario_id not in cls._TABLE:
            raise ValueError(f"scenario must be 1..4, got {scenario_id}")
        ner, patterns, fallback = cls._TABLE[scenario_id]
        return cls(scenario_id, ner, patterns, fallback)


@dataclass
class Outcome:
    question_id: str
    category: str
    candidates: list[CandidateAnswer]
    final: str | None
    final_strategy: str | None
    correct: bool
    fallback_used: bool
    relaxation_used: str
    patterns_learned: int
    error: str | None = None

    @property
    def answered(self) -> bool:
        return bool(self.candidates)


@dataclass(frozen=True)
class RevisionSchedule:
    interval: int

    def __post_init__(self):
        if self.interval < 1:
            raise ValueError("interval must be >= 1")

    def checkpoints(self, total: int) -> list[int]:
        # stop points i*n strictly below the corpus size
        return [i for i in range(self.interval, total, self.interval)]


@dataclass
class PipelineState:
    kb: KnowledgeBase
    index: Index
    gazetteer: Gazetteer
    hints: dict[str, Category] = field(default_factory=load_hint_table)
    regex_rules: dict = field(default_factory=load_regex_rules)
    relax: RelaxConfig = field(default_factory=default_config)
    top_k: int = 20
    sentence_cache: dict[str, list[RetrievedSentence]] = field(default_factory=dict)


def pattern_candidates(patterns: list[Pattern], sentences: list[RetrievedSentence],
                       config: RelaxConfig) -> list[CandidateAnswer]:
    """Union of pattern extractions over the sentences: exact pass over all
    patterns first, relaxed pass only when it found nothing."""

    def collect(cfg: RelaxConfig) -> list[CandidateAnswer]:
        found = []
        seen = set()
        for sentence in sentences:
            for pattern in patterns:
                for cand in unify(pattern, sentence.tree, cfg):
                    key = (sentence.doc_id, sentence.position, cand.span)
                    if key in seen:
                        continue
                    seen.add(key)
                    found.append(replace(cand, doc_id=sentence.doc_id, position=sentence.position))
        return found

    exact = collect(config.exact())
    if exact or not (config.enable_lexical or config.enable_syntactic):
        return exact
    return collect(config)


def oracle_select(candidates: list[CandidateAnswer], references) -> CandidateAnswer | None:
    """Flawless final-answer selection: the first candidate matching any
    reference answer, or nothing."""
    normalized = {normalize_answer(r) for r in references}
    for cand in candidates:
        if normalize_answer(cand.text) in normalized:
            return cand
    return None


def apply_feedback(state: PipelineState, question: Question, answer: str,
                   category: Category | None = None) -> int:
    """Positive-feedback learning: derive patterns from the question's
    cached retrieved sentences, insert them, record the Q/A pair.

    Returns the number of learned patterns that told the KB anything new,
    counting both fresh element sequences and fresh provenance on an
    already-stored sequence; repeating identical feedback yields 0.
    """
    sentences = state.sentence_cache.get(question.id, [])
    patterns = learn_patterns(question, answer, sentences, category=category)
    learned = 0
    for pattern in patterns:
        stored = state.kb.find(pattern.signature, pattern.elements)
        if stored is None or not set(pattern.provenances) <= set(stored.provenances):
            learned += 1
    state.kb.insert(patterns)
    state.kb.record_qa(question.id, answer)
    return learned


def answer_question(state: PipelineState, question: Question,
                    scenario: ScenarioConfig) -> Outcome:
    """Classify, retrieve, extract, oracle-select, then learn. Errors never
    abort the sequence; they yield an unanswered outcome."""
    try:
        category = classify(question, state.hints)
        query = content_words(question.parse)
        sentences = retrieve(state.index, query, state.top_k)
        state.sentence_cache[question.id] = sentences

        candidates: list[CandidateAnswer] = []
        if scenario.use_patterns:
            signature = question_signature(question, category)
            applicable = state.kb.lookup(signature)
            if applicable:
                candidates.extend(pattern_candidates(applicable, sentences, state.relax))
        if scenario.use_ner:
            seen = {(c.doc_id, c.position, c.span) for c in candidates}
            for cand in extract_ner(category, sentences, state.gazetteer, state.regex_rules):
                if (cand.doc_id, cand.position, cand.span) in seen:
                    continue
                candidates.append(cand)

        final = oracle_select(candidates, question.answers)
        correct = final is not None
        fallback_used = False
        patterns_learned = 0
        if correct and scenario.use_patterns:
            patterns_learned = apply_feedback(state, question, final.text, category)
        elif not correct and scenario.reference_fallback:
            patterns_learned = apply_feedback(state, question, question.answers[0], category)
            fallback_used = True
        return Outcome(
            question_id=question.id,
            category=str(category),
            candidates=candidates,
            final=final.text if final else None,
            final_strategy=final.strategy if final else None,
            correct=correct,
            fallback_used=fallback_used,
            relaxation_used=final.relaxation_used if final else RELAX_NONE,
            patterns_learned=patterns_learned,
        )
    except Exception as exc:  # noqa: BLE001 - per-question fault isolation
        return Outcome(
            question_id=question.id,
            category="",
            candidates=[],
            final=None,
            final_strategy=None,
            correct=False,
            fallback_used=False,
            relaxation_used=RELAX_NONE,
            patterns_learned=0,
            error=f"{type(exc).__name__}: {exc}",
        )


@dataclass
class CheckpointReport:
    checkpoint: int
    retried: list[str]
    newly_correct: list[str]
    patterns_learned: int = 0


@dataclass
class RunResult:
    outcomes: list[Outcome]
    points: list[EvalPoint]
    alt_points: list[EvalPoint]
    revision: list[CheckpointReport] | None = None


def _excluding(patterns: list[Pattern], question_id: str) -> list[Pattern]:
    return [p for p in patterns if question_id not in p.source_questions]


def revise(state: PipelineState, questions: dict[str, Question], pending: list[str],
           checkpoint: int, learn_on_revision: bool = True) -> CheckpointReport:
    """Retry previously wrong or unsolved questions against the current KB,
    excluding every pattern whose provenance includes the question itself
    (a question must not be rescued by what it taught)."""
    report = CheckpointReport(checkpoint=checkpoint, retried=list(pending), newly_correct=[])
    for qid in pending:
        question = questions[qid]
        category = classify(question, state.hints)
        signature = question_signature(question, category)
        applicable = _excluding(state.kb.lookup(signature), qid)
        if not applicable:
            continue
        sentences = state.sentence_cache.get(qid, [])
        candidates = pattern_candidates(applicable, sentences, state.relax)
        final = oracle_select(candidates, question.answers)
        if final is None:
            continue
        report.newly_correct.append(qid)
        if learn_on_revision:
            report.patterns_learned += apply_feedback(state, question, final.text, category)
    return report


def run_sequence(state: PipelineState, questions: list[Question], scenario: ScenarioConfig,
                 schedule: RevisionSchedule | None = None,
                 learn_on_revision: bool = True) -> RunResult:
    """Process the corpus in order, emitting one outcome and one running
    metric point per question. With a revision schedule, previously failed
    questions are retried at every interval checkpoint and newly correct
    ones count as correct from that point forward."""
    by_id = {q.id: q for q in questions}
    checkpoints = set(schedule.checkpoints(len(questions))) if schedule else set()
    outcomes: list[Outcome] = []
    points: list[EvalPoint] = []
    alt_points: list[EvalPoint] = []
    reports: list[CheckpointReport] = []
    correct_ids: set[str] = set()
    answered_ids: set[str] = set()
    fallback_ids: set[str] = set()

    for i, question in enumerate(questions, 1):
        outcome = answer_question(state, question, scenario)
        outcomes.append(outcome)
        if outcome.correct:
            correct_ids.add(question.id)
        if outcome.answered:
            answered_ids.add(question.id)
        if outcome.fallback_used:
            fallback_ids.add(question.id)
        points.append(make_point(i, len(correct_ids), len(answered_ids)))
        alt_points.append(make_point(i, len(correct_ids), len(answered_ids | fallback_ids)))
        if i in checkpoints:
            pending = [q.id for q in questions[:i] if q.id not in correct_ids]
            report = revise(state, by_id, pending, i, learn_on_revision)
            reports.append(report)
            for qid in report.newly_correct:
                correct_ids.add(qid)
                answered_ids.add(qid)
    return RunResult(
        outcomes=outcomes,
        points=points,
        alt_points=alt_points,
        revision=reports if schedule else None,
    )
