"""Bigram HMM part-of-speech tagger with add-k smoothing.

Lets the pipeline run from plain text; pre-tagged input bypasses it.
Unknown words emit uniformly over an open-class tag set so that they can
never receive a closed-class tag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Sentence

START = "<s>"

# Tags an unseen word may receive.
OPEN_CLASS_TAGS = frozenset({
    "NN", "NNS", "NNP", "VB", "VBD", "VBZ", "VBG", "VBN", "JJ", "RB", "CD",
})

MODEL_HEADER = "clausecut-tagger/1"


@dataclass(frozen=True)
class TaggerModel:
    """Count tables of a bigram HMM.  Probabilities are derived on
    demand: P(t|c) = (n(c,t)+k) / (n(c)+k*|tags|) and
    P(w|t) = (n(t,w)+k) / (n(t)+k*|vocab|)."""

    tags: tuple[str, ...]              # observed tags, sorted
    vocab: tuple[str, ...]             # observed word forms, sorted
    add_k: float
    transition_counts: dict            # (prev_tag, tag) -> int
    context_totals: dict               # prev_tag -> int (includes START)
    emission_counts: dict              # (tag, word) -> int
    tag_totals: dict                   # tag -> int
    open_class: frozenset = OPEN_CLASS_TAGS

    def __post_init__(self):
        object.__setattr__(self, "_vocab_set", frozenset(self.vocab))

    def transition(self, prev: str, tag: str) -> float:
        n = self.transition_counts.get((prev, tag), 0)
        denom = self.context_totals.get(prev, 0) + self.add_k * len(self.tags)
        return (n + self.add_k) / denom if denom else 0.0

    def emission(self, tag: str, word: str) -> float:
        n = self.emission_counts.get((tag, word), 0)
        denom = self.tag_totals.get(tag, 0) + self.add_k * len(self.vocab)
        return (n + self.add_k) / denom if denom else 0.0

    def known(self, word: str) -> bool:
        return word in self._vocab_set


def train_tagger(corpus: list[Sentence], add_k: float = 0.1) -> TaggerModel:
    """Count tag bigrams and word emissions from a tagged corpus."""
    if not corpus:
        raise ValueError("cannot train tagger on an empty corpus")
    transition_counts = {}
    context_totals = {}
    emission_counts = {}
    tag_totals = {}
    tags = set()
    vocab = set()
    for sentence in corpus:
        prev = START
        for token in sentence.tokens:
            tags.add(token.pos)
            vocab.add(token.form)
            key = (prev, token.pos)
            transition_counts[key] = transition_counts.get(key, 0) + 1
            context_totals[prev] = context_totals.get(prev, 0) + 1
            ekey = (token.pos, token.form)
            emission_counts[ekey] = emission_counts.get(ekey, 0) + 1
            tag_totals[token.pos] = tag_totals.get(token.pos, 0) + 1
            prev = token.pos
    return TaggerModel(
        tags=tuple(sorted(tags)),
        vocab=tuple(sorted(vocab)),
        add_k=add_k,
        transition_counts=transition_counts,
        context_totals=context_totals,
        emission_counts=emission_counts,
        tag_totals=tag_totals,
    )


def _log(p: float) -> float:
    return math.log(p) if p > 0.0 else float("-inf")


def _emission_log_row(model: TaggerModel, word: str) -> list[float]:
    """Per-tag log emission scores for one word.  Unknown words score a
    flat constant on open-class tags and -inf elsewhere."""
    if model.known(word):
        return [_log(model.emission(t, word)) for t in model.tags]
    allowed = [t for t in model.tags if t in model.open_class]
    if not allowed:
        allowed = list(model.tags)
    flat = _log(1.0 / len(model.vocab))
    return [flat if t in allowed else float("-inf") for t in model.tags]


def tag(model: TaggerModel, words: list[str]) -> list[str]:
    """Viterbi decode of the most probable tag sequence.  Among equal
    scores the lexicographically smallest sequence is returned.

    Scores are accumulated right-to-left (a suffix table), then the
    sequence is read off left-to-right greedily, which realizes the
    lexicographic tie-break exactly.
    """
    if not words:
        raise ValueError("cannot tag an empty sentence")
    tags = model.tags
    m = len(tags)
    emit = [_emission_log_row(model, w) for w in words]
    trans = {
        prev: [_log(model.transition(prev, t)) for t in tags]
        for prev in tags + (START,)
    }

    n = len(words)
    # suffix[i][a] = best score of positions i+1..n-1 given tag a at i.
    suffix = [[0.0] * m for _ in range(n)]
    for i in range(n - 2, -1, -1):
        nxt = suffix[i + 1]
        for a in range(m):
            row = trans[tags[a]]
            best = float("-inf")
            for b in range(m):
                s = (row[b] + emit[i + 1][b]) + nxt[b]
                if s > best:
                    best = s
            suffix[i][a] = best

    # Read the sequence off greedily.  Candidates are compared on their
    # full-path score with the already-fixed arc terms re-added outermost
    # (the same float association a naive enumeration uses), so exact
    # ties resolve to the lexicographically smallest sequence.
    start_row = trans[START]
    result = []
    prefix_terms = []  # (transition + emission) of the arcs fixed so far
    prev_rank = None
    for i in range(n):
        row = start_row if prev_rank is None else trans[tags[prev_rank]]
        best = float("-inf")
        best_a = None
        for a in range(m):
            s = (row[a] + emit[i][a]) + suffix[i][a]
            for term in reversed(prefix_terms):
                s = term + s
            if s > best:
                best = s
                best_a = a
        if best_a is None or best == float("-inf"):
            # Every continuation has probability zero (add_k=0 with
            # unseen events); fall back to the first allowed emission.
            best_a = next(
                (a for a in range(m) if emit[i][a] > float("-inf")), 0
            )
        result.append(tags[best_a])
        prefix_terms.append(row[best_a] + emit[i][best_a])
        prev_rank = best_a
    return result


def save_tagger(model: TaggerModel, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(MODEL_HEADER + "\n")
        f.write("add_k\t%s\n" % repr(model.add_k))
        f.write("tags\t%s\n" % " ".join(model.tags))
        f.write("open_class\t%s\n" % " ".join(sorted(model.open_class)))
        f.write("vocab_size\t%d\n" % len(model.vocab))
        for w in model.vocab:
            f.write("word\t%s\n" % w)
        for prev in sorted(model.context_totals):
            f.write("context\t%s\t%d\n" % (prev, model.context_totals[prev]))
        for (prev, t) in sorted(model.transition_counts):
            f.write("trans\t%s\t%s\t%d\n" % (prev, t, model.transition_counts[(prev, t)]))
        for t in sorted(model.tag_totals):
            f.write("tagtotal\t%s\t%d\n" % (t, model.tag_totals[t]))
        for (t, w) in sorted(model.emission_counts):
            f.write("emit\t%s\t%s\t%d\n" % (t, w, model.emission_counts[(t, w)]))


def load_tagger(path) -> TaggerModel:
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n")
        if header != MODEL_HEADER:
            raise ValueError(f"not a tagger model file: header {header!r}")
        add_k = None
        tags = ()
        open_class = None
        vocab = []
        transition_counts = {}
        context_totals = {}
        emission_counts = {}
        tag_totals = {}
        for line in f:
            fields = line.rstrip("\n").split("\t")
            kind = fields[0]
            if kind == "add_k":
                add_k = float(fields[1])
            elif kind == "tags":
                tags = tuple(fields[1].split())
            elif kind == "open_class":
                open_class = frozenset(fields[1].split())
            elif kind == "vocab_size":
                pass
            elif kind == "word":
                vocab.append(fields[1])
            elif kind == "context":
                context_totals[fields[1]] = int(fields[2])
            elif kind == "trans":
                transition_counts[(fields[1], fields[2])] = int(fields[3])
            elif kind == "tagtotal":
                tag_totals[fields[1]] = int(fields[2])
            elif kind == "emit":
                emission_counts[(fields[1], fields[2])] = int(fields[3])
            else:
                raise ValueError(f"unknown record {kind!r} in tagger model")
    return TaggerModel(
        tags=tags,
        vocab=tuple(vocab),
        add_k=add_k,
        transition_counts=transition_counts,
        context_totals=context_totals,
        emission_counts=emission_counts,
        tag_totals=tag_totals,
        open_class=open_class if open_class is not None else OPEN_CLASS_TAGS,
    )
