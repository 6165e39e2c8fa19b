"""Pattern/sentence unification with lexical and syntactic relaxation.

A pattern is aligned against consecutive units of a sentence parse: a
Lexical element consumes one leaf whose token matches it, a Syntactic or
AnswerSlot element consumes a preterminal or constituent carrying a
matching label. Candidate alignments are explored top-down, left-to-right,
depth-first; every leaf offset at which the remaining sentence is long
enough is tried. The exact pass runs first; relaxation (string-similarity
token matching, superclass-compatible tags) only applies when exact
unification produced nothing, which is precisely its trigger.

All functions here are pure over immutable inputs; parallel evaluation
across sentences is safe as long as result lists are merged in sentence
order.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from importlib import resources

from .knowledge import ANSWER_SLOT, LEXICAL, Pattern
from .treebank import ParseTree, leaves, node_spans

RELAX_NONE = "none"
RELAX_LEXICAL = "lexical"
RELAX_SYNTACTIC = "syntactic"
RELAX_BOTH = "both"

DEFAULT_THRESHOLDS = {"levenshtein": 0.8, "overlap": 0.6, "jaccard": 0.5}


def levenshtein_distance(a: str, b: str) -> int:
    """Classic edit distance over characters (insert/delete/substitute)."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        current = [i]
        for j, cb in enumerate(b, 1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != cb),
            ))
        previous = current
    return previous[-1]


def _bigrams(s: str) -> set[str]:
    return {s[i : i + 2] for i in range(len(s) - 1)}


def lexical_similarity(a: str, b: str, measure: str = "levenshtein") -> float:
    """Similarity in [0, 1]; symmetric, 1.0 on identical inputs.

    levenshtein: 1 - d/max(|a|,|b|); overlap: |A&B|/min over character
    bigrams (1.0 when either set is empty); jaccard: |A&B|/|A|B| union
    (1.0 when both empty).
    """
    if measure == "levenshtein":
        longest = max(len(a), len(b))
        if longest == 0:
            return 1.0
        return 1.0 - levenshtein_distance(a, b) / longest
    if measure == "overlap":
        ga, gb = _bigrams(a), _bigrams(b)
        if not ga or not gb:
            return 1.0
        return len(ga & gb) / min(len(ga), len(gb))
    if measure == "jaccard":
        ga, gb = _bigrams(a), _bigrams(b)
        if not ga and not gb:
            return 1.0
        return len(ga & gb) / len(ga | gb)
    raise ValueError(f"unknown measure {measure!r}")


def load_tag_hierarchy(path=None) -> dict[str, str]:
    """Tag -> superclass map, one "tag<TAB>superclass" per line."""
    if path is None:
        text = resources.files("patternqa").joinpath("data/tag_hierarchy.tsv").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    hierarchy = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tag, _, superclass = line.partition("\t")
        hierarchy[tag.strip()] = superclass.strip()
    return hierarchy


def tag_compatible(a: str, b: str, hierarchy: dict[str, str]) -> bool:
    """True iff the tags are equal or share a superclass. Unknown tags are
    their own singleton class, so this stays reflexive and symmetric."""
    if a == b:
        return True
    return hierarchy.get(a, a) == hierarchy.get(b, b)


@dataclass(frozen=True)
class RelaxConfig:
    enable_lexical: bool = True
    lexical_measure: str = "levenshtein"
    lexical_threshold: float = 0.8
    enable_syntactic: bool = True
    tag_hierarchy: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if not 0.0 <= self.lexical_threshold <= 1.0:
            raise ValueError("threshold must be in [0, 1]")
        if self.lexical_measure not in DEFAULT_THRESHOLDS:
            raise ValueError(f"unknown measure {self.lexical_measure!r}")

    @property
    def hierarchy(self) -> dict[str, str]:
        return dict(self.tag_hierarchy)

    def exact(self) -> "RelaxConfig":
        return replace(self, enable_lexical=False, enable_syntactic=False)


def default_config(measure: str = "levenshtein", threshold: float | None = None,
                   enable_lexical: bool = True, enable_syntactic: bool = True) -> RelaxConfig:
    if threshold is None:
        threshold = DEFAULT_THRESHOLDS[measure]
    return RelaxConfig(
        enable_lexical=enable_lexical,
        lexical_measure=measure,
        lexical_threshold=threshold,
        enable_syntactic=enable_syntactic,
        tag_hierarchy=tuple(sorted(load_tag_hierarchy().items())),
    )


@dataclass(frozen=True)
class CandidateAnswer:
    text: str
    span: tuple[int, int]  # half-open leaf indices within the sentence
    strategy: str  # "pattern" or "ner"
    pattern_provenance: str | None = None
    relaxation_used: str = RELAX_NONE
    doc_id: str | None = None
    position: int | None = None


def _alignments(pattern: Pattern, tokens, nodes_by_start, start, config, relax):
    """Yield (answer_span, lexical_used, syntactic_used) for alignments of
    the full element sequence beginning at leaf offset ``start``."""
    hierarchy = config.hierarchy if relax and config.enable_syntactic else None
    n = len(tokens)

    def match(idx, pos, captured, lex_used, syn_used):
        if idx == len(pattern.elements):
            yield captured, lex_used, syn_used
            return
        remaining = len(pattern.elements) - idx
        if n - pos < remaining:
            return
        element = pattern.elements[idx]
        if element.kind == LEXICAL:
            token = tokens[pos]
            if token.lower() == element.value.lower():
                yield from match(idx + 1, pos + 1, captured, lex_used, syn_used)
            elif relax and config.enable_lexical and lexical_similarity(
                token.lower(), element.value.lower(), config.lexical_measure
            ) >= config.lexical_threshold:
                yield from match(idx + 1, pos + 1, captured, True, syn_used)
            return
        for end, label in nodes_by_start.get(pos, ()):
            if label == element.value:
                relaxed = False
            elif hierarchy is not None and tag_compatible(label, element.value, hierarchy):
                relaxed = True
            else:
                continue
            cap = (pos, end) if element.kind == ANSWER_SLOT else captured
            yield from match(idx + 1, end, cap, lex_used, syn_used or relaxed)

    yield from match(0, start, None, False, False)


def unify(pattern: Pattern, sentence: ParseTree, config: RelaxConfig) -> list[CandidateAnswer]:
    """Extract candidate answers for one pattern against one sentence tree.

    Failure yields an empty list; that is what triggers the relaxed pass.
    Results are deduplicated by span and ordered by sentence position.
    """
    tokens = leaves(sentence)
    nodes_by_start: dict[int, list[tuple[int, str]]] = {}
    for nd, s, e in node_spans(sentence):  # preorder, so higher nodes come first
        if nd.is_leaf:
            continue
        nodes_by_start.setdefault(s, []).append((e, nd.label))

    def run(relax: bool) -> dict[tuple[int, int], str]:
        found: dict[tuple[int, int], str] = {}
        max_start = len(tokens) - len(pattern.elements)
        for start in range(max_start + 1):
            for span, lex_used, syn_used in _alignments(
                pattern, tokens, nodes_by_start, start, config, relax
            ):
                if span is None or span in found:
                    continue
                if lex_used and syn_used:
                    found[span] = RELAX_BOTH
                elif lex_used:
                    found[span] = RELAX_LEXICAL
                elif syn_used:
                    found[span] = RELAX_SYNTACTIC
                else:
                    found[span] = RELAX_NONE
        return found

    found = run(relax=False)
    if not found and (config.enable_lexical or config.enable_syntactic):
        found = run(relax=True)
    out = []
    for span in sorted(found):
        out.append(
            CandidateAnswer(
                text=" ".join(tokens[span[0] : span[1]]),
                span=span,
                strategy="pattern",
                pattern_provenance=pattern.render(),
                relaxation_used=found[span],
            )
        )
    return out
