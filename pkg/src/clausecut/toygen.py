"""Deterministic generator of conjoined two-clause sentences with known
gold trees, used for comparative experiments between the whole-sentence
baseline and the divide-and-conquer pipeline."""

from __future__ import annotations

import random

from .core import ROOT, LinkWordRole, Sentence, Token

# Noun phrase templates: (forms, tags); the head is the last token.
SUBJECTS = [
    (("he",), ("PRP",)),
    (("she",), ("PRP",)),
    (("the", "cat"), ("DT", "NN")),
    (("the", "dog"), ("DT", "NN")),
    (("a", "man"), ("DT", "NN")),
    (("the", "child"), ("DT", "NN")),
    (("the", "old", "man"), ("DT", "JJ", "NN")),
    (("a", "young", "woman"), ("DT", "JJ", "NN")),
    (("Jane",), ("NNP",)),
    (("Peter",), ("NNP",)),
]
OBJECTS = [
    (("fish",), ("NN",)),
    (("milk",), ("NN",)),
    (("apples",), ("NNS",)),
    (("oranges",), ("NNS",)),
    (("the", "ball"), ("DT", "NN")),
    (("a", "book"), ("DT", "NN")),
    (("the", "red", "ball"), ("DT", "JJ", "NN")),
    (("an", "old", "song"), ("DT", "JJ", "NN")),
    (("sour", "plums"), ("JJ", "NNS")),
    (("fresh", "bread"), ("JJ", "NN")),
]
VERBS = [
    ("likes", "VBZ"), ("sees", "VBZ"), ("wants", "VBZ"),
    ("hates", "VBZ"), ("eats", "VBZ"), ("chases", "VBZ"),
    ("liked", "VBD"), ("saw", "VBD"), ("wanted", "VBD"), ("chased", "VBD"),
]
CONJUNCTIONS = ("but", "and")


def _clause(rng):
    """Token rows (form, pos, local governor, bio) for SUBJ V OBJ."""
    subj = rng.choice(SUBJECTS)
    verb = rng.choice(VERBS)
    obj = rng.choice(OBJECTS)
    rows = []
    verb_pos = len(subj[0])
    head = verb_pos - 1
    for k, (form, tag) in enumerate(zip(*subj)):
        gov = verb_pos if k == head else head
        rows.append((form, tag, gov, "B-NP" if k == 0 else "I-NP"))
    rows.append((verb[0], verb[1], None, "O"))  # governor filled by caller
    obj_head = verb_pos + len(obj[0])
    for k, (form, tag) in enumerate(zip(*obj)):
        gov = verb_pos if k == len(obj[0]) - 1 else obj_head
        rows.append((form, tag, gov, "B-NP" if k == 0 else "I-NP"))
    return rows, verb_pos


def conjoined_sentence(rng) -> Sentence:
    """Two clauses joined by a clausal conjunction, final punctuation as
    the root anchor: v1 <- ".", cc <- v1, v2 <- cc."""
    left, v1 = _clause(rng)
    right, v2 = _clause(rng)
    cc = rng.choice(CONJUNCTIONS)
    offset = len(left) + 1
    tokens = []
    governors = []
    roles = []
    bio = []
    for i, (form, tag, gov, chunk) in enumerate(left):
        tokens.append(Token(i, form, tag))
        governors.append(gov)
        roles.append(None)
        bio.append(chunk)
    cc_index = len(left)
    tokens.append(Token(cc_index, cc, "CC"))
    governors.append(v1)
    roles.append(LinkWordRole.CLAUSAL_CONJUNCTION)
    bio.append("O")
    for i, (form, tag, gov, chunk) in enumerate(right):
        tokens.append(Token(offset + i, form, tag))
        governors.append(None if gov is None else offset + gov)
        roles.append(None)
        bio.append(chunk)
    final = len(tokens)
    tokens.append(Token(final, ".", "."))
    governors.append(ROOT)
    roles.append(None)
    bio.append("O")
    governors[v1] = final
    governors[offset + v2] = cc_index
    return Sentence(tuple(tokens), tuple(governors), tuple(roles), tuple(bio))


def simple_sentence(rng) -> Sentence:
    """One clause with final punctuation: v <- ".", "." <- ROOT."""
    rows, v = _clause(rng)
    tokens = []
    governors = []
    bio = []
    for i, (form, tag, gov, chunk) in enumerate(rows):
        tokens.append(Token(i, form, tag))
        governors.append(gov)
        bio.append(chunk)
    final = len(tokens)
    tokens.append(Token(final, ".", "."))
    governors.append(ROOT)
    bio.append("O")
    governors[v] = final
    return Sentence(tuple(tokens), tuple(governors),
                    tuple([None] * len(tokens)), tuple(bio))


def generate_conjoined(count: int, seed: int = 0) -> list[Sentence]:
    rng = random.Random(seed)
    return [conjoined_sentence(rng) for _ in range(count)]


def generate_simple(count: int, seed: int = 0) -> list[Sentence]:
    rng = random.Random(seed)
    return [simple_sentence(rng) for _ in range(count)]
