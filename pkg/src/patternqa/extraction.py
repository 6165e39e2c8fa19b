"""Baseline non-pattern answer extraction: regexes, gazetteer lookup, and a
capitalized-sequence entity heuristic, dispatched on the question category.

The heuristics intentionally reproduce the failure structure of a typed
recognizer rather than chase accuracy: a misclassified question routes to
the wrong extractor and misses its answer (DESC questions have no strategy
at all), which is exactly the behavior the pattern strategy has to recover
from.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

from .classify import Category
from .corpus import normalize_answer
from .retrieval import RetrievedSentence, STOPWORDS
from .treebank import leaves
from .unification import RELAX_NONE, CandidateAnswer

MAX_GAZETTEER_SPAN = 5


@dataclass(frozen=True)
class Gazetteer:
    """Per-category surface-form sets; forms are pre-normalized."""

    entries: tuple[tuple[str, frozenset[str]], ...] = ()

    def forms(self, label: str) -> frozenset[str]:
        for key, forms in self.entries:
            if key == label:
                return forms
        return frozenset()

    def coarse_classes_of(self, form: str) -> set[str]:
        normalized = normalize_answer(form)
        return {key.split(":")[0] for key, forms in self.entries if normalized in forms}


def load_gazetteer(path=None) -> Gazetteer:
    """"coarse:fine<TAB>surface form" lines."""
    if path is None:
        text = resources.files("patternqa").joinpath("data/gazetteer.tsv").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    table: dict[str, set[str]] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        label, _, form = line.partition("\t")
        table.setdefault(label.strip(), set()).add(normalize_answer(form))
    return Gazetteer(tuple((label, frozenset(forms)) for label, forms in sorted(table.items())))


def load_regex_rules(path=None) -> dict[str, list[re.Pattern]]:
    """"coarse:fine<TAB>pattern" lines; several patterns per class allowed."""
    if path is None:
        text = resources.files("patternqa").joinpath("data/ner_regex.tsv").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    rules: dict[str, list[re.Pattern]] = {}
    for line in text.splitlines():
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        label, _, pattern = line.partition("\t")
        rules.setdefault(label.strip(), []).append(re.compile(pattern))
    return rules


def _keep_maximal(spans: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Leftmost-longest non-overlapping selection."""
    kept: list[tuple[int, int]] = []
    for span in sorted(spans, key=lambda sp: (sp[0], -(sp[1] - sp[0]))):
        if kept and span[0] < kept[-1][1]:
            continue
        kept.append(span)
    return kept


def _regex_spans(tokens: list[str], patterns: list[re.Pattern]) -> list[tuple[int, int]]:
    joined = " ".join(tokens)
    starts, ends = {}, {}
    offset = 0
    for i, token in enumerate(tokens):
        starts[offset] = i
        ends[offset + len(token)] = i + 1
        offset += len(token) + 1
    spans = []
    for pattern in patterns:
        for match in pattern.finditer(joined):
            begin, stop = match.span()
            if begin in starts and stop in ends:  # token-aligned matches only
                spans.append((starts[begin], ends[stop]))
    return _keep_maximal(spans)


def _capitalized_runs(tokens: list[str]) -> list[tuple[int, int]]:
    """Maximal runs of capitalized tokens; a sentence-initial stopword
    ("The ...") does not start a run."""
    spans = []
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if token[:1].isupper() and not (i == 0 and token.lower() in STOPWORDS):
            j = i + 1
            while j < len(tokens) and tokens[j][:1].isupper():
                j += 1
            spans.append((i, j))
            i = j
        else:
            i += 1
    return spans


def _gazetteer_spans(tokens: list[str], forms: frozenset[str]) -> list[tuple[int, int]]:
    if not forms:
        return []
    spans = []
    n = len(tokens)
    for start in range(n):
        if not normalize_answer(tokens[start]):  # articles/punctuation cannot open a span
            continue
        for end in range(start + 1, min(n, start + MAX_GAZETTEER_SPAN) + 1):
            if not normalize_answer(tokens[end - 1]):
                continue
            if normalize_answer(" ".join(tokens[start:end])) in forms:
                spans.append((start, end))
                break
    return _keep_maximal(spans)


_OPEN_PARENS = {"(", "-LRB-"}
_CLOSE_PARENS = {")", "-RRB-"}


def _abbreviation_spans(tokens: list[str]) -> list[tuple[int, int]]:
    """Runs of uppercase tokens enclosed in parentheses."""
    spans = []
    for i, token in enumerate(tokens):
        if token not in _OPEN_PARENS:
            continue
        j = i + 1
        while (j < len(tokens) and tokens[j] not in _CLOSE_PARENS
               and len(tokens[j]) >= 2 and tokens[j].isupper()):
            j += 1
        if j > i + 1 and j < len(tokens) and tokens[j] in _CLOSE_PARENS:
            spans.append((i + 1, j))
    return _keep_maximal(spans)


def extract_ner(category: Category, sentences: list[RetrievedSentence],
                gazetteer: Gazetteer, regex_rules: dict[str, list[re.Pattern]] | None = None
                ) -> list[CandidateAnswer]:
    """Category-dispatched extraction over the retrieved sentences.

    NUM uses the regex inventory for its fine class; HUM/LOC/ENTY use
    gazetteer hits for the fine class plus capitalized-token sequences
    (suppressed when the gazetteer knows the span under a different coarse
    class); ABBR finds parenthesized uppercase runs; DESC has no strategy.
    Output is deterministic, ordered by (sentence index, span start).
    """
    if regex_rules is None:
        regex_rules = load_regex_rules()
    out: list[CandidateAnswer] = []
    for sentence in sentences:
        tokens = leaves(sentence.tree)
        spans: list[tuple[int, int]] = []
        if category.coarse == "NUM":
            spans = _regex_spans(tokens, regex_rules.get(str(category), []))
        elif category.coarse in ("HUM", "LOC", "ENTY"):
            spans = list(_gazetteer_spans(tokens, gazetteer.forms(str(category))))
            for span in _capitalized_runs(tokens):
                others = gazetteer.coarse_classes_of(" ".join(tokens[span[0]:span[1]]))
                if others and category.coarse not in others:
                    continue
                spans.append(span)
        elif category.coarse == "ABBR":
            spans = _abbreviation_spans(tokens)
        # DESC: no specific strategy
        seen = set()
        for span in sorted(spans):
            if span in seen:
                continue
            seen.add(span)
            out.append(
                CandidateAnswer(
                    text=" ".join(tokens[span[0]:span[1]]),
                    span=span,
                    strategy="ner",
                    relaxation_used=RELAX_NONE,
                    doc_id=sentence.doc_id,
                    position=sentence.position,
                )
            )
    return out
