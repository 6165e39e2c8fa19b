#!/usr/bin/env python3
"""Regenerate the shipped desk-scale fixtures (fixtures/qa30.jsonl,
fixtures/docs.jsonl).

The 30-question corpus is laid out for the experiment properties the test
suite asserts:

  q01-q06  six structurally unique questions. None of them can be solved
           by patterns (first occurrence of each signature); q01-q03 also
           defeat the heuristic extractors (no DESC strategy, misclassified
           person/country question, lowercase answer), while q04-q06 are
           heuristic-only successes (regex date, capitalized location,
           spelled-out count).
  q07-q14  "Who wrote/penned T?" group, one shared signature. q07 is the
           group's teacher: it fails first, its reference answer teaches
           the pattern, and every later group member succeeds by reuse.
           q08 uses a different verb so the pattern it feeds back keeps
           the sentence verb lexical; that pattern is what rescues q07 at
           a revision checkpoint (q07's own patterns are excluded there).
  q15-q22  "Where did X die/perish?" group, same teacher construction.
  q23-q30  "What instrument did X play/master?" group, same construction;
           q27's answer is absent from the gazetteer so only patterns can
           find it.

Group supporting sentences pair each answer with exactly one sentence and
keep answers unique across the collection, so retrieval stays narrow and
outcomes are easy to reason about.
"""

from __future__ import annotations

import json
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"


def np_of(*tagged):
    return "(NP " + " ".join(f"({tag} {tok})" for tag, tok in tagged) + ")"


def name_np(name):
    return np_of(*[("NNP", part) for part in name.split()])


def title_np(title):
    parts = title.split()
    tagged = []
    for part in parts:
        tag = "DT" if part.lower() in ("a", "an", "the") else "NNP"
        tagged.append((tag, part))
    return np_of(*tagged)


def who_question(verb, title):
    return f"(SBARQ (WHNP (WP Who)) (SQ (VP (VBD {verb}) {title_np(title)})) (. ?))"


def wrote_sentence(author, title, flat_subject=False):
    # flat_subject renders the subject as a bare preterminal (no NP wrapper),
    # the parse shape that only syntactic relaxation can match
    subject = f"(NNP {author})" if flat_subject else name_np(author)
    return f"(S {subject} (VP (VBZ has) (VP (VBN written) {title_np(title)})) (. .))"


def where_question(verb, name):
    return (f"(SBARQ (WHADVP (WRB Where)) (SQ (VBD did) {name_np(name)} "
            f"(VP (VB {verb}))) (. ?))")


def died_sentence(name, verb, place):
    return (f"(S {name_np(name)} (VP (VBD {verb}) (PP (IN in) {name_np(place)})) (. .))")


def instrument_question(verb, name):
    return (f"(SBARQ (WHNP (WDT What) (NN instrument)) (SQ (VBD did) {name_np(name)} "
            f"(VP (VB {verb}))) (. ?))")


def played_sentence(name, verb, instrument):
    return (f"(S {name_np(name)} (VP (VBD {verb}) (NP (DT the) (NN {instrument}))) (. .))")


QUESTIONS = [
    # --- q01-q06: unique-signature singles ---
    {
        "id": "q01",
        "question": "How did Malcolm X die?",
        "parse": "(SBARQ (WHADVP (WRB How)) (SQ (VBD did) (NP (NNP Malcolm) (NNP X)) (VP (VB die))) (. ?))",
        "category": "DESC:manner",
        "answers": ["assassinated"],
    },
    {
        "id": "q02",
        "question": "Who did France beat for the World Cup?",
        "parse": "(SBARQ (WHNP (WP Who)) (SQ (VBD did) (NP (NNP France)) (VP (VB beat) (PP (IN for) (NP (DT the) (NNP World) (NNP Cup))))) (. ?))",
        "answers": ["Brazil"],
    },
    {
        "id": "q03",
        "question": "What is the Playboy logo?",
        "parse": "(SBARQ (WHNP (WP What)) (SQ (VBZ is) (NP (DT the) (NNP Playboy) (NN logo))) (. ?))",
        "answers": ["rabbit"],
    },
    {
        "id": "q04",
        "question": "When did Columbus arrive in America?",
        "parse": "(SBARQ (WHADVP (WRB When)) (SQ (VBD did) (NP (NNP Columbus)) (VP (VB arrive) (PP (IN in) (NP (NNP America))))) (. ?))",
        "answers": ["1492"],
    },
    {
        "id": "q05",
        "question": "Where is the Louvre?",
        "parse": "(SBARQ (WHADVP (WRB Where)) (SQ (VBZ is) (NP (DT the) (NNP Louvre))) (. ?))",
        "answers": ["Paris"],
    },
    {
        "id": "q06",
        "question": "How many planets are in the Solar System?",
        "parse": "(SBARQ (WHNP (WHADJP (WRB How) (JJ many)) (NNS planets)) (SQ (VP (VBP are) (PP (IN in) (NP (DT the) (NNP Solar) (NNP System))))) (. ?))",
        "answers": ["eight"],
    },
]

WRITERS = [
    # qid, question verb, title, author, flat-subject sentence parse
    ("q07", "wrote", "The Divine Comedy", "Dante", False),
    ("q08", "penned", "Moby Dick", "Herman Melville", False),
    ("q09", "wrote", "Hamlet", "Shakespeare", False),
    ("q10", "wrote", "Faust", "Goethe", True),
    ("q11", "wrote", "Ulysses", "James Joyce", False),
    ("q12", "wrote", "Candide", "Voltaire", False),
    ("q13", "wrote", "Dracula", "Bram Stoker", False),
    ("q14", "wrote", "Frankenstein", "Mary Shelley", False),
]

DEATHS = [
    ("q15", "die", "Mozart", "perished", "Vienna"),
    ("q16", "perish", "Napoleon", "perished", "Saint Helena"),
    ("q17", "die", "Chopin", "died", "Paris"),
    ("q18", "die", "Cervantes", "died", "Madrid"),
    ("q19", "die", "Rembrandt", "died", "Amsterdam"),
    ("q20", "die", "Kepler", "died", "Regensburg"),
    ("q21", "die", "Tesla", "died", "New York"),
    ("q22", "die", "Monteverdi", "died", "Venice"),
]

PLAYERS = [
    ("q23", "play", "Miles Davis", "mastered", "trumpet"),
    ("q24", "master", "John Coltrane", "mastered", "saxophone"),
    ("q25", "play", "Glenn Gould", "played", "piano"),
    ("q26", "play", "Jimi Hendrix", "played", "guitar"),
    ("q27", "play", "Ravi Shankar", "played", "sitar"),
    ("q28", "play", "Pablo Casals", "played", "cello"),
    ("q29", "play", "James Galway", "played", "flute"),
    ("q30", "play", "Itzhak Perlman", "played", "violin"),
]

for qid, verb, title, author, _ in WRITERS:
    QUESTIONS.append({
        "id": qid,
        "question": f"Who {verb} {title}?",
        "parse": who_question(verb, title),
        "answers": [author],
    })

for qid, qverb, name, _, place in DEATHS:
    QUESTIONS.append({
        "id": qid,
        "question": f"Where did {name} {qverb}?",
        "parse": where_question(qverb, name),
        "answers": [place],
    })

for qid, qverb, name, _, instrument in PLAYERS:
    QUESTIONS.append({
        "id": qid,
        "question": f"What instrument did {name} {qverb}?",
        "parse": instrument_question(qverb, name),
        "answers": [instrument],
    })


DOCS = [
    {
        "doc_id": "history",
        "sentences": [
            {
                "text": "Malcolm X was assassinated in 1965.",
                "parse": "(S (NP (NNP Malcolm) (NNP X)) (VP (VBD was) (VP (VBN assassinated) (PP (IN in) (NP (CD 1965))))) (. .))",
            },
            {
                "text": "France beat Brazil in the World Cup final.",
                "parse": "(S (NP (NNP France)) (VP (VBD beat) (NP (NNP Brazil)) (PP (IN in) (NP (DT the) (NNP World) (NNP Cup) (NN final)))) (. .))",
            },
            {
                "text": "Columbus arrived in America in 1492.",
                "parse": "(S (NP (NNP Columbus)) (VP (VBD arrived) (PP (IN in) (NP (NNP America))) (PP (IN in) (NP (CD 1492)))) (. .))",
            },
            {
                "text": "The Louvre is located in Paris.",
                "parse": "(S (NP (DT The) (NNP Louvre)) (VP (VBZ is) (VP (VBN located) (PP (IN in) (NP (NNP Paris))))) (. .))",
            },
        ],
    },
    {
        "doc_id": "literature",
        "sentences": [
            {
                "text": f"{author} has written {title}.",
                "parse": wrote_sentence(author, title, flat),
            }
            for _, _, title, author, flat in WRITERS
        ],
    },
    {
        "doc_id": "deaths",
        "sentences": [
            {
                "text": f"{name} {verb} in {place}.",
                "parse": died_sentence(name, verb, place),
            }
            for _, _, name, verb, place in DEATHS
        ],
    },
    {
        "doc_id": "music",
        "sentences": [
            {
                "text": f"{name} {verb} the {instrument}.",
                "parse": played_sentence(name, verb, instrument),
            }
            for _, _, name, verb, instrument in PLAYERS
        ],
    },
    {
        "doc_id": "misc",
        "sentences": [
            {
                "text": "The Playboy logo is a rabbit.",
                "parse": "(S (NP (DT The) (NNP Playboy) (NN logo)) (VP (VBZ is) (NP (DT a) (NN rabbit))) (. .))",
            },
            {
                "text": "There are eight planets in the Solar System.",
                "parse": "(S (NP (EX There)) (VP (VBP are) (NP (CD eight) (NNS planets)) (PP (IN in) (NP (DT the) (NNP Solar) (NNP System)))) (. .))",
            },
            {
                "text": "Rain fell across the quiet valley.",
                "parse": "(S (NP (NN Rain)) (VP (VBD fell) (PP (IN across) (NP (DT the) (JJ quiet) (NN valley)))) (. .))",
            },
            {
                "text": "The museum opens before noon.",
                "parse": "(S (NP (DT The) (NN museum)) (VP (VBZ opens) (PP (IN before) (NP (NN noon)))) (. .))",
            },
            {
                "text": "The committee will meet again next month.",
                "parse": "(S (NP (DT The) (NN committee)) (VP (MD will) (VP (VB meet) (ADVP (RB again)) (NP (JJ next) (NN month)))) (. .))",
            },
        ],
    },
]


def main():
    FIXTURES.mkdir(exist_ok=True)
    with open(FIXTURES / "qa30.jsonl", "w", encoding="utf-8") as handle:
        for record in QUESTIONS:
            handle.write(json.dumps(record, sort_keys=True) + "\n")
    with open(FIXTURES / "docs.jsonl", "w", encoding="utf-8") as handle:
        for record in DOCS:
            handle.write(json.dumps(record, sort_keys=True) + "\n")

    # sanity: fixtures must load and satisfy the corpus invariants
    from patternqa.corpus import load_documents, load_qa_corpus

    questions = load_qa_corpus(FIXTURES / "qa30.jsonl")
    docs = load_documents(FIXTURES / "docs.jsonl")
    assert len(questions) == 30
    print(f"wrote {len(questions)} questions, "
          f"{sum(len(d.sentences) for d in docs)} sentences in {len(docs)} docs")


if __name__ == "__main__":
    main()
