"""Pattern learning from Q/A pairs, and the signature-indexed pattern store.

A pattern is a flat sequence of elements aligned to contiguous sentence
units: literal tokens, syntactic-category slots, and exactly one answer
slot. Learning takes a question, its known answer, and supporting
sentences; from each sentence that contains the answer plus at least one
question phrase it derives one pattern over the minimal covering span:

  * the answer span becomes an AnswerSlot labeled by its lowest exactly
    covering constituent (preterminal tag when the span is one token with
    no phrasal cover);
  * each matched question phrase becomes a Syntactic slot labeled the same
    way from the sentence tree;
  * leftover tokens whose stem matches a question content-word stem become
    Syntactic slots over their POS tag;
  * every other token stays Lexical.

The knowledge base stores patterns per question signature (semantic
category + wh-word + depth-limited label sequence) with set-union,
provenance-merging insertion. It is single-writer: the pipeline mutates it
only between questions, so extraction always sees a frozen snapshot.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .classify import Category, classify, wh_word
from .corpus import Question, normalize_answer, tokenize
from .retrieval import RetrievedSentence, STOPWORDS
from .stem import stem
from .treebank import ParseTree, leaves, node_spans

MAX_PATTERN_ELEMENTS = 12
SIGNATURE_DEPTH = 2

LEXICAL = "lexical"
SYNTACTIC = "syntactic"
ANSWER_SLOT = "answer"


@dataclass(frozen=True)
class PatternElement:
    kind: str
    value: str

    def __post_init__(self):
        if self.kind not in (LEXICAL, SYNTACTIC, ANSWER_SLOT):
            raise ValueError(f"unknown element kind {self.kind!r}")
        if not self.value:
            raise ValueError("element value must be non-empty")

    def render(self) -> str:
        if self.kind == ANSWER_SLOT:
            return f"{self.value}_answer"
        if self.kind == SYNTACTIC:
            return self.value
        return self.value.lower()


def lexical(token: str) -> PatternElement:
    return PatternElement(LEXICAL, token)


def syntactic(tag: str) -> PatternElement:
    return PatternElement(SYNTACTIC, tag)


def answer_slot(tag: str) -> PatternElement:
    return PatternElement(ANSWER_SLOT, tag)


@dataclass(frozen=True)
class Signature:
    category: Category
    structure_key: str


@dataclass(frozen=True)
class Pattern:
    elements: tuple[PatternElement, ...]
    signature: Signature
    provenances: tuple[tuple[str, str], ...]  # (question id, sentence identifier)

    def __post_init__(self):
        slots = [e for e in self.elements if e.kind == ANSWER_SLOT]
        if len(slots) != 1:
            raise ValueError("a pattern has exactly one answer slot")
        if len(self.elements) < 2:
            raise ValueError("a bare answer slot matches anything and is forbidden")

    def render(self) -> str:
        return " ".join(e.render() for e in self.elements)

    @property
    def source_questions(self) -> frozenset[str]:
        return frozenset(qid for qid, _ in self.provenances)


def question_signature(question: Question, category: Category) -> Signature:
    """Signature = category + wh-word lemma + preorder labels of internal
    nodes at depth <= 2. Insensitive to all leaf tokens except the wh-word."""
    wh, _ = wh_word(question.parse)
    labels = []

    def walk(nd: ParseTree, depth: int):
        if nd.is_leaf or depth > SIGNATURE_DEPTH:
            return
        labels.append(nd.label)
        for child in nd.children:
            walk(child, depth + 1)

    walk(question.parse, 0)
    return Signature(category=category, structure_key=f"{wh}|{' '.join(labels)}")


def _content_tokens(question: Question) -> list[str]:
    out = []
    for tok in leaves(question.parse):
        low = tok.lower()
        if low in STOPWORDS or not any(c.isalnum() for c in low):
            continue
        out.append(low)
    return out


def _find_subsequence(haystack: list[str], needle: list[str], blocked: tuple[int, int] | None) -> tuple[int, int] | None:
    if not needle or len(needle) > len(haystack):
        return None
    for start in range(len(haystack) - len(needle) + 1):
        end = start + len(needle)
        if haystack[start:end] != needle:
            continue
        if blocked and not (end <= blocked[0] or start >= blocked[1]):
            continue
        return (start, end)
    return None


def _covering_label(spans, start: int, end: int) -> str | None:
    """Label of the lowest non-preterminal constituent exactly covering
    [start, end); preterminal tag as fallback for single-token spans."""
    constituent = None
    preterminal = None
    for nd, s, e in spans:  # preorder: later hits are deeper
        if s != start or e != end or nd.is_leaf:
            continue
        if nd.is_preterminal:
            preterminal = nd.label
        else:
            constituent = nd.label
    if constituent is not None:
        return constituent
    if preterminal is not None and end - start == 1:
        return preterminal
    return None


def _question_phrases(question: Question) -> list[list[str]]:
    """Token sequences of question constituents (non-preterminal internal
    nodes) that contain at least one content word."""
    phrases = []
    seen = set()
    for nd, s, e in node_spans(question.parse):
        if nd.is_leaf or nd.is_preterminal:
            continue
        tokens = [t.lower() for t in leaves(nd)]
        if not any(t not in STOPWORDS and any(c.isalnum() for c in t) for t in tokens):
            continue
        key = tuple(tokens)
        if key in seen:
            continue
        seen.add(key)
        phrases.append(tokens)
    return phrases


def _answer_span(sentence_tokens: list[str], answer: str) -> tuple[int, int] | None:
    lowered = [t.lower() for t in sentence_tokens]
    raw = [t.lower() for t in tokenize(answer)]
    span = _find_subsequence(lowered, raw, None)
    if span is not None:
        return span
    normalized_sentence = [normalize_answer(t) for t in sentence_tokens]
    normalized = normalize_answer(answer).split()
    return _find_subsequence(normalized_sentence, normalized, None)


def _pattern_from_sentence(question: Question, answer: str, sentence: RetrievedSentence,
                           signature: Signature) -> Pattern | None:
    tree = sentence.tree
    tokens = leaves(tree)
    lowered = [t.lower() for t in tokens]
    ans = _answer_span(tokens, answer)
    if ans is None:
        return None
    spans = node_spans(tree)
    ans_label = _covering_label(spans, *ans)
    if ans_label is None:
        return None

    matched = []
    for phrase in _question_phrases(question):
        hit = _find_subsequence(lowered, phrase, ans)
        if hit is None:
            continue
        label = _covering_label(spans, *hit)
        if label is None:
            continue
        matched.append((hit, label))
    # keep maximal non-overlapping phrase spans, longest first
    matched.sort(key=lambda item: (-(item[0][1] - item[0][0]), item[0][0]))
    kept: list[tuple[tuple[int, int], str]] = []
    for span, label in matched:
        if any(not (span[1] <= k[0][0] or span[0] >= k[0][1]) for k in kept):
            continue
        kept.append((span, label))
    if not kept:
        return None
    kept.sort(key=lambda item: item[0][0])

    start = min(ans[0], kept[0][0][0])
    end = max(ans[1], kept[-1][0][1])
    content_stems = {stem(w) for w in _content_tokens(question)}
    pos_tags = {s: nd.label for nd, s, e in spans if nd.is_preterminal}

    elements = []
    i = start
    regions = [(ans, answer_slot(ans_label))] + [(sp, syntactic(lb)) for sp, lb in kept]
    regions.sort(key=lambda item: item[0])
    region_index = {sp[0]: (sp, el) for sp, el in regions}
    while i < end:
        if i in region_index:
            span, element = region_index[i]
            elements.append(element)
            i = span[1]
            continue
        token = tokens[i]
        if stem(token) in content_stems:
            elements.append(syntactic(pos_tags[i]))
        else:
            elements.append(lexical(token))
        i += 1
    if len(elements) > MAX_PATTERN_ELEMENTS:
        return None
    sentence_id = f"{sentence.doc_id}:{sentence.position}"
    return Pattern(tuple(elements), signature, ((question.id, sentence_id),))


def learn_patterns(question: Question, answer: str, sentences: list[RetrievedSentence],
                   category: Category | None = None) -> list[Pattern]:
    """One pattern per learnable sentence, deduplicated by elements with
    provenances merged; output is independent of sentence order."""
    if not answer:
        return []
    if category is None:
        category = classify(question)
    signature = question_signature(question, category)
    by_elements: dict[tuple, list[tuple[str, str]]] = {}
    for sentence in sorted(sentences, key=lambda s: (s.doc_id, s.position)):
        pattern = _pattern_from_sentence(question, answer, sentence, signature)
        if pattern is None:
            continue
        by_elements.setdefault(pattern.elements, []).extend(pattern.provenances)
    return [
        Pattern(elements, signature, tuple(sorted(set(provs))))
        for elements, provs in by_elements.items()
    ]


class KnowledgeBase:
    """Signature-indexed pattern store plus the source Q/A pairs."""

    def __init__(self):
        self._patterns: dict[Signature, list[Pattern]] = {}
        self._by_elements: dict[tuple[Signature, tuple], int] = {}
        self.qa_pairs: list[tuple[str, str]] = []

    def insert(self, patterns: list[Pattern]) -> int:
        """Set-union insertion; returns the number of newly stored patterns.
        Same-element patterns merge their provenance lists."""
        added = 0
        for pattern in patterns:
            key = (pattern.signature, pattern.elements)
            slot = self._by_elements.get(key)
            if slot is None:
                bucket = self._patterns.setdefault(pattern.signature, [])
                self._by_elements[key] = len(bucket)
                bucket.append(pattern)
                added += 1
            else:
                bucket = self._patterns[pattern.signature]
                existing = bucket[slot]
                merged = tuple(sorted(set(existing.provenances) | set(pattern.provenances)))
                bucket[slot] = Pattern(existing.elements, existing.signature, merged)
        return added

    def lookup(self, signature: Signature) -> list[Pattern]:
        """Patterns under one signature, in insertion order; [] when unseen."""
        return list(self._patterns.get(signature, ()))

    def find(self, signature: Signature, elements: tuple) -> Pattern | None:
        slot = self._by_elements.get((signature, elements))
        if slot is None:
            return None
        return self._patterns[signature][slot]

    def signatures(self) -> list[Signature]:
        return list(self._patterns)

    def pattern_count(self) -> int:
        return sum(len(bucket) for bucket in self._patterns.values())

    def record_qa(self, question_id: str, answer: str) -> None:
        self.qa_pairs.append((question_id, answer))


def kb_insert(kb: KnowledgeBase, patterns: list[Pattern]) -> int:
    return kb.insert(patterns)


def kb_lookup(kb: KnowledgeBase, signature: Signature) -> list[Pattern]:
    return kb.lookup(signature)


def _element_to_json(element: PatternElement) -> dict:
    return {"kind": element.kind, "value": element.value}


def save_kb(kb: KnowledgeBase, path) -> None:
    payload = {
        "signatures": [
            {
                "category": str(signature.category),
                "structure_key": signature.structure_key,
                "patterns": [
                    {
                        "elements": [_element_to_json(e) for e in p.elements],
                        "provenance": [list(pair) for pair in p.provenances],
                    }
                    for p in kb.lookup(signature)
                ],
            }
            for signature in kb.signatures()
        ],
        "qa_pairs": [list(pair) for pair in kb.qa_pairs],
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=1)
        handle.write("\n")


def load_kb(path) -> KnowledgeBase:
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    kb = KnowledgeBase()
    for entry in payload.get("signatures", []):
        signature = Signature(Category.parse(entry["category"]), entry["structure_key"])
        for item in entry.get("patterns", []):
            elements = tuple(PatternElement(e["kind"], e["value"]) for e in item["elements"])
            provenances = tuple(tuple(pair) for pair in item["provenance"])
            kb.insert([Pattern(elements, signature, provenances)])
    for qid, answer in payload.get("qa_pairs", []):
        kb.record_qa(qid, answer)
    return kb
