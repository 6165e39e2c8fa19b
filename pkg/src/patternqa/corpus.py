"""Q/A corpus and pre-parsed document collection: loading, validation,
answer normalization.

File formats (JSON Lines, UTF-8):
  questions: {"id", "question", "parse", "category"?, "answers": [...]}
  documents: {"doc_id", "sentences": [{"text", "parse"}, ...]}
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .treebank import ParseTree, TreeFormatError, leaves, parse_bracketed


class CorpusError(ValueError):
    """Invalid corpus content; ``line`` is the 1-based offending line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Question:
    id: str
    text: str
    parse: ParseTree
    category: str | None = None  # gold "coarse:fine" label, when present
    answers: tuple[str, ...] = ()


@dataclass(frozen=True)
class Document:
    doc_id: str
    sentences: tuple[tuple[str, ParseTree], ...]


_TRAILING_PUNCT = re.compile(r"^(.*?)([.,?!;:]*)$")


def tokenize(text: str) -> list[str]:
    """Whitespace split with terminal punctuation separated into its own
    tokens ("Comedy?" -> ["Comedy", "?"]). Fixtures are authored to agree
    with parse leaves under this rule."""
    out = []
    for chunk in text.split():
        word, punct = _TRAILING_PUNCT.match(chunk).groups()
        if word:
            out.append(word)
        out.extend(punct)
    return out


_ARTICLES = {"a", "an", "the"}
_PUNCT = re.compile(r"[^\w\s]")


def normalize_answer(text: str) -> str:
    """Lowercase, drop leading articles, strip punctuation, collapse
    whitespace. Idempotent; answer matching is exact on normalized forms."""
    text = _PUNCT.sub("", text.lower())
    tokens = text.split()
    while tokens and tokens[0] in _ARTICLES:
        tokens = tokens[1:]
    return " ".join(tokens)


def answers_match(candidate: str, reference: str) -> bool:
    return normalize_answer(candidate) == normalize_answer(reference)


def _parse_tree_field(raw, lineno) -> ParseTree:
    if not isinstance(raw, str):
        raise CorpusError("parse must be a bracketed-tree string", lineno)
    try:
        return parse_bracketed(raw)
    except TreeFormatError as exc:
        raise CorpusError(f"bad parse: {exc}", lineno) from exc


def _records(path):
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            if not raw.strip():
                continue
            try:
                record = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"malformed JSON: {exc.msg}", lineno) from exc
            if not isinstance(record, dict):
                raise CorpusError("record must be a JSON object", lineno)
            yield lineno, record


def load_qa_corpus(path) -> list[Question]:
    """Load questions in file order (order matters for running metrics)."""
    questions = []
    seen = set()
    for lineno, record in _records(path):
        for key in ("id", "question", "parse", "answers"):
            if key not in record:
                raise CorpusError(f"missing field {key!r}", lineno)
        qid = record["id"]
        if qid in seen:
            raise CorpusError(f"duplicate id {qid!r}", lineno)
        seen.add(qid)
        answers = record["answers"]
        if not isinstance(answers, list) or not answers:
            raise CorpusError("answers must be a non-empty list", lineno)
        tree = _parse_tree_field(record["parse"], lineno)
        text = record["question"]
        if [t.lower() for t in leaves(tree)] != [t.lower() for t in tokenize(text)]:
            raise CorpusError("parse leaves do not match tokenized question", lineno)
        questions.append(
            Question(
                id=qid,
                text=text,
                parse=tree,
                category=record.get("category"),
                answers=tuple(str(a) for a in answers),
            )
        )
    return questions


def load_documents(path) -> list[Document]:
    docs = []
    seen = set()
    for lineno, record in _records(path):
        for key in ("doc_id", "sentences"):
            if key not in record:
                raise CorpusError(f"missing field {key!r}", lineno)
        doc_id = record["doc_id"]
        if doc_id in seen:
            raise CorpusError(f"duplicate doc_id {doc_id!r}", lineno)
        seen.add(doc_id)
        sentences = []
        for sent in record["sentences"]:
            if "text" not in sent or "parse" not in sent:
                raise CorpusError("sentence needs text and parse", lineno)
            tree = _parse_tree_field(sent["parse"], lineno)
            text = sent["text"]
            if [t.lower() for t in leaves(tree)] != [t.lower() for t in tokenize(text)]:
                raise CorpusError("parse leaves do not match sentence text", lineno)
            sentences.append((text, tree))
        docs.append(Document(doc_id=doc_id, sentences=tuple(sentences)))
    return docs
