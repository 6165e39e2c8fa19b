"""Fixed suffix-stripping stemmer used when learning patterns.

Pure suffix rules cannot relate ablaut forms, so a small irregular table
maps those to a base before stripping; "wrote", "written" and "writes"
all stem to "writ". The stemmer is fixed on purpose: pattern learning and
matching must agree across runs.
"""

from __future__ import annotations

_IRREGULAR = {
    "is": "be", "are": "be", "was": "be", "were": "be", "been": "be", "being": "be",
    "has": "have", "had": "have",
    "did": "do", "does": "do", "done": "do",
    "wrote": "write", "written": "write",
    "gave": "give", "given": "give",
    "took": "take", "taken": "take",
    "made": "make",
    "went": "go", "gone": "go",
    "saw": "see", "seen": "see",
    "knew": "know", "known": "know",
    "found": "find",
    "said": "say",
    "won": "win",
    "beaten": "beat",
    "sang": "sing", "sung": "sing",
    "began": "begin", "begun": "begin",
}

_DOUBLES = ("bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt")
_VOWELS = "aeiou"


def _undouble(word: str) -> str:
    if word.endswith(_DOUBLES):
        return word[:-1]
    return word


def stem(word: str) -> str:
    w = word.lower()
    w = _IRREGULAR.get(w, w)
    # plural-ish endings
    if w.endswith("sses"):
        w = w[:-2]
    elif w.endswith("ies"):
        w = w[:-2]
    elif w.endswith("ied"):
        w = w[:-1]
    elif w.endswith("s") and not w.endswith("ss") and len(w) > 3:
        w = w[:-1]
    # participle endings
    if w.endswith("eed"):
        w = w[:-1]
    elif w.endswith("ing") and len(w) > 5:
        w = _undouble(w[:-3])
    elif w.endswith("ed") and len(w) > 4:
        w = _undouble(w[:-2])
    # final normalization
    if w.endswith("e") and len(w) > 3:
        w = w[:-1]
    if w.endswith("y") and len(w) > 3 and w[-2] not in _VOWELS:
        w = w[:-1] + "i"
    return w
