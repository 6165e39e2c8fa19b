"""Semantic question classification (Li & Roth style coarse:fine labels).

A gold label from the corpus always wins. Otherwise ordered wh-word rules
apply, with a head-noun hint table for what/which questions. The rules are
deliberately fallible: "Who did France beat for the World Cup?" comes out
HUM:ind even though the true answer is a country, and downstream strategies
must cope with that.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .corpus import Question
from .treebank import ParseTree, dfs_nodes

COARSE_CLASSES = frozenset({"ABBR", "DESC", "ENTY", "HUM", "LOC", "NUM"})

WH_TAGS = frozenset({"WP", "WP$", "WDT", "WRB"})
WH_WORDS = frozenset({"who", "whom", "whose", "what", "which", "when", "where", "why", "how"})


@dataclass(frozen=True)
class Category:
    coarse: str
    fine: str

    def __post_init__(self):
        if self.coarse not in COARSE_CLASSES:
            raise ValueError(f"unknown coarse class {self.coarse!r}")

    def __str__(self) -> str:
        return f"{self.coarse}:{self.fine}"

    @classmethod
    def parse(cls, text: str) -> "Category":
        coarse, _, fine = text.partition(":")
        return cls(coarse, fine or "other")


def load_hint_table(path=None) -> dict[str, Category]:
    """Head-noun hints, one "head_noun<TAB>coarse:fine" per line."""
    if path is None:
        text = resources.files("patternqa").joinpath("data/head_noun_hints.tsv").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    hints = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        noun, _, label = line.partition("\t")
        hints[noun.strip().lower()] = Category.parse(label.strip())
    return hints


def _tagged_leaves(tree: ParseTree) -> list[tuple[str, str]]:
    return [(nd.children[0].token, nd.label) for nd in dfs_nodes(tree) if nd.is_preterminal]


def wh_word(tree: ParseTree) -> tuple[str, int]:
    """First wh-word (lowercased) and its leaf position; ("", -1) if none."""
    for i, (token, tag) in enumerate(_tagged_leaves(tree)):
        low = token.lower()
        if tag in WH_TAGS or low in WH_WORDS:
            return low, i
    return "", -1


def _head_noun(tree: ParseTree, wh_index: int) -> str | None:
    tagged = _tagged_leaves(tree)
    after = tagged[wh_index + 1 :] if wh_index >= 0 else tagged
    for token, tag in after:
        if tag in ("NN", "NNS"):
            return token.lower()
    for token, tag in after:
        if tag in ("NNP", "NNPS"):
            return token.lower()
    return None


def classify(question: Question, hints: dict[str, Category] | None = None) -> Category:
    """Total function; deterministic for a given question text/parse."""
    if question.category:
        return Category.parse(question.category)
    if hints is None:
        hints = load_hint_table()
    wh, wh_index = wh_word(question.parse)
    tokens = [t for t, _ in _tagged_leaves(question.parse)]
    follower = tokens[wh_index + 1].lower() if 0 <= wh_index + 1 < len(tokens) else ""
    if wh in ("who", "whom"):
        return Category("HUM", "ind")
    if wh == "where":
        return Category("LOC", "other")
    if wh == "when":
        return Category("NUM", "date")
    if wh == "how" and follower in ("many", "much"):
        return Category("NUM", "count")
    if wh == "how":
        return Category("DESC", "manner")
    if wh == "why":
        return Category("DESC", "reason")
    if wh in ("what", "which", "whose"):
        noun = _head_noun(question.parse, wh_index)
        if noun and noun in hints:
            return hints[noun]
    return Category("ENTY", "other")
