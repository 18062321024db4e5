"""Base noun phrase bracketing and compression.

An HMM over BIO states with POS emissions finds base NPs.  Adjacent NPs
joined by logical conjunctive commas, logical conjunctions, or
group-forming prepositions ("of" by default) merge into NP groups; a
segment is compressed by replacing every group with a single placeholder
noun, and the replacement is invertible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import PENN_TAGS, LinkWordRole, Token

BIO_STATES = ("B-NP", "I-NP", "O")
MODEL_HEADER = "clausecut-chunker/1"

GROUP_CONNECTIVE_ROLES = frozenset({
    LinkWordRole.LOGICAL_CONJUNCTIVE_COMMA,
    LinkWordRole.LOGICAL_CONJUNCTION,
})


@dataclass(frozen=True)
class NPSpan:
    """Inclusive token-index span of one base noun phrase."""

    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError(f"empty NP span ({self.start}, {self.end})")

    def indices(self):
        return range(self.start, self.end + 1)


@dataclass(frozen=True)
class NPGroup:
    """One or more NP spans with the connective token between each
    consecutive pair.  Spans and connectives are textually contiguous."""

    spans: tuple[NPSpan, ...]
    connectives: tuple[int, ...]

    def __post_init__(self):
        if len(self.connectives) != len(self.spans) - 1:
            raise ValueError("group must have one connective between consecutive spans")
        for k, conn in enumerate(self.connectives):
            if conn != self.spans[k].end + 1 or conn != self.spans[k + 1].start - 1:
                raise ValueError("group spans and connectives are not contiguous")

    @property
    def start(self) -> int:
        return self.spans[0].start

    @property
    def end(self) -> int:
        return self.spans[-1].end


@dataclass(frozen=True)
class NPExtraction:
    """A segment with its NP groups replaced by placeholder nouns.

    ``compressed`` tokens are re-indexed 0..m-1; ``groups`` maps the
    placeholder's compressed position back to the group it replaced.
    Span indices inside groups refer to ``original`` positions, counted
    from the start of the segment."""

    original: tuple[Token, ...]
    compressed: tuple[Token, ...]
    groups: dict

    def is_placeholder(self, position: int) -> bool:
        return position in self.groups


@dataclass(frozen=True)
class ChunkerModel:
    """First-order HMM over BIO states conditioned on POS tags, with
    add-k smoothing.  Emission alphabet is the frozen Penn tagset."""

    add_k: float
    transition_counts: dict   # (prev_state, state) -> int, prev may be <s>
    context_totals: dict      # prev_state -> int
    emission_counts: dict     # (state, pos) -> int
    state_totals: dict        # state -> int

    def transition(self, prev: str, state: str) -> float:
        n = self.transition_counts.get((prev, state), 0)
        denom = self.context_totals.get(prev, 0) + self.add_k * len(BIO_STATES)
        return (n + self.add_k) / denom if denom else 0.0

    def emission(self, state: str, pos: str) -> float:
        n = self.emission_counts.get((state, pos), 0)
        denom = self.state_totals.get(state, 0) + self.add_k * len(PENN_TAGS)
        return (n + self.add_k) / denom if denom else 0.0


START = "<s>"


def train_chunker(corpus, add_k: float = 0.1) -> ChunkerModel:
    """Count BIO transitions and POS emissions from sentences carrying a
    chunk column."""
    annotated = [s for s in corpus if s.bio is not None]
    if not annotated:
        raise ValueError("no sentences with chunk annotation in training corpus")
    transition_counts = {}
    context_totals = {}
    emission_counts = {}
    state_totals = {}
    for num, sentence in enumerate(annotated):
        prev = START
        for i, state in enumerate(sentence.bio):
            if state == "I-NP" and (i == 0 or sentence.bio[i - 1] == "O"):
                text = " ".join(t.form for t in sentence.tokens)
                raise ValueError(
                    f"sentence {num} ({text!r}): I-NP without a preceding B-NP/I-NP"
                )
            key = (prev, state)
            transition_counts[key] = transition_counts.get(key, 0) + 1
            context_totals[prev] = context_totals.get(prev, 0) + 1
            ekey = (state, sentence.tokens[i].pos)
            emission_counts[ekey] = emission_counts.get(ekey, 0) + 1
            state_totals[state] = state_totals.get(state, 0) + 1
            prev = state
    return ChunkerModel(add_k, transition_counts, context_totals,
                        emission_counts, state_totals)


def _log(p: float) -> float:
    return math.log(p) if p > 0.0 else float("-inf")


def decode_bio(model: ChunkerModel, tokens) -> list[str]:
    """Viterbi decode of the BIO sequence; ties resolve to the
    lexicographically smallest state sequence (B-NP < I-NP < O)."""
    if not tokens:
        return []
    states = BIO_STATES
    m = len(states)
    n = len(tokens)
    emit = [[_log(model.emission(s, t.pos)) for s in states] for t in tokens]
    trans = {
        prev: [_log(model.transition(prev, s)) for s in states]
        for prev in states + (START,)
    }
    suffix = [[0.0] * m for _ in range(n)]
    for i in range(n - 2, -1, -1):
        nxt = suffix[i + 1]
        for a in range(m):
            row = trans[states[a]]
            best = float("-inf")
            for b in range(m):
                s = (row[b] + emit[i + 1][b]) + nxt[b]
                if s > best:
                    best = s
            suffix[i][a] = best

    # Compare candidates on the full-path score with the fixed prefix
    # terms re-added outermost, so exact float ties resolve to the
    # lexicographically smallest sequence.
    result = []
    prefix_terms = []
    prev = START
    for i in range(n):
        row = trans[prev]
        best = float("-inf")
        best_a = 0
        for a in range(m):
            s = (row[a] + emit[i][a]) + suffix[i][a]
            for term in reversed(prefix_terms):
                s = term + s
            if s > best:
                best = s
                best_a = a
        result.append(states[best_a])
        prefix_terms.append(row[best_a] + emit[i][best_a])
        prev = states[best_a]
    return result


def spans_from_bio(bio) -> list[NPSpan]:
    """NP spans from a BIO sequence.  An I-NP with no open chunk starts
    a new span (lenient decoding)."""
    spans = []
    start = None
    for i, state in enumerate(bio):
        if state == "B-NP":
            if start is not None:
                spans.append(NPSpan(start, i - 1))
            start = i
        elif state == "I-NP":
            if start is None:
                start = i
        else:
            if start is not None:
                spans.append(NPSpan(start, i - 1))
                start = None
    if start is not None:
        spans.append(NPSpan(start, len(bio) - 1))
    return spans


def bracket(model: ChunkerModel, tokens) -> list[NPSpan]:
    """Non-overlapping NP spans for a tagged token sequence."""
    return spans_from_bio(decode_bio(model, tokens))


def group_nps(tokens, spans, roles, group_forming=frozenset({"of"})) -> list[NPGroup]:
    """Merge maximal runs NP-connective-NP-... into groups; isolated NPs
    become singleton groups.

    A connective is a logical conjunctive comma, a logical conjunction,
    or a non-segmenting preposition whose form is in ``group_forming``,
    and it must sit immediately between the two spans."""
    spans = sorted(spans, key=lambda s: s.start)
    for a, b in zip(spans, spans[1:]):
        if b.start <= a.end:
            raise ValueError(f"overlapping NP spans {a} and {b}")

    def connects(position: int) -> bool:
        role = roles[position]
        if role in GROUP_CONNECTIVE_ROLES:
            return True
        return (
            role is LinkWordRole.NON_SEGMENTING_PREPOSITION
            and tokens[position].form.lower() in group_forming
        )

    groups = []
    i = 0
    while i < len(spans):
        run = [spans[i]]
        connectives = []
        j = i
        while (
            j + 1 < len(spans)
            and spans[j + 1].start == spans[j].end + 2
            and connects(spans[j].end + 1)
        ):
            connectives.append(spans[j].end + 1)
            run.append(spans[j + 1])
            j += 1
        groups.append(NPGroup(tuple(run), tuple(connectives)))
        i = j + 1
    return groups


def extract_nps(segment_tokens, groups) -> NPExtraction:
    """Replace each NP group with a single placeholder noun NP#k.

    Group span indices must be relative to ``segment_tokens``.  All
    other tokens keep their order; the compressed sequence is re-indexed
    from zero."""
    segment_tokens = tuple(segment_tokens)
    n = len(segment_tokens)
    groups = sorted(groups, key=lambda g: g.start)
    for g in groups:
        if g.start < 0 or g.end >= n:
            raise ValueError(f"group {g.start}..{g.end} outside segment of {n} tokens")

    covered = {}
    for k, g in enumerate(groups):
        for i in range(g.start, g.end + 1):
            covered[i] = k

    compressed = []
    placeholder_map = {}
    i = 0
    while i < n:
        if i in covered:
            k = covered[i]
            group = groups[k]
            placeholder_map[len(compressed)] = group
            compressed.append(Token(len(compressed), f"NP#{k}", "NN"))
            i = group.end + 1
        else:
            compressed.append(Token(len(compressed), segment_tokens[i].form,
                                    segment_tokens[i].pos))
            i += 1
    return NPExtraction(segment_tokens, tuple(compressed), placeholder_map)


def expand_extraction(extraction: NPExtraction) -> tuple[Token, ...]:
    """Inverse of extract_nps: the original segment token sequence."""
    out = []
    for pos, token in enumerate(extraction.compressed):
        group = extraction.groups.get(pos)
        if group is None:
            out.append(extraction.original[len(out)])
        else:
            out.extend(extraction.original[group.start:group.end + 1])
    return tuple(out)


def format_brackets(tokens, spans) -> str:
    """Text with [NP ... ] markers around each span."""
    starts = {s.start for s in spans}
    ends = {s.end for s in spans}
    parts = []
    for i, token in enumerate(tokens):
        if i in starts:
            parts.append("[NP")
        parts.append(token.form)
        if i in ends:
            parts.append("]")
    return " ".join(parts)


def save_chunker(model: ChunkerModel, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(MODEL_HEADER + "\n")
        f.write("add_k\t%s\n" % repr(model.add_k))
        for prev in sorted(model.context_totals):
            f.write("context\t%s\t%d\n" % (prev, model.context_totals[prev]))
        for (prev, s) in sorted(model.transition_counts):
            f.write("trans\t%s\t%s\t%d\n" % (prev, s, model.transition_counts[(prev, s)]))
        for s in sorted(model.state_totals):
            f.write("statetotal\t%s\t%d\n" % (s, model.state_totals[s]))
        for (s, p) in sorted(model.emission_counts):
            f.write("emit\t%s\t%s\t%d\n" % (s, p, model.emission_counts[(s, p)]))


def load_chunker(path) -> ChunkerModel:
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n")
        if header != MODEL_HEADER:
            raise ValueError(f"not a chunker model file: header {header!r}")
        add_k = 0.1
        transition_counts = {}
        context_totals = {}
        emission_counts = {}
        state_totals = {}
        for line in f:
            fields = line.rstrip("\n").split("\t")
            if fields[0] == "add_k":
                add_k = float(fields[1])
            elif fields[0] == "context":
                context_totals[fields[1]] = int(fields[2])
            elif fields[0] == "trans":
                transition_counts[(fields[1], fields[2])] = int(fields[3])
            elif fields[0] == "statetotal":
                state_totals[fields[1]] = int(fields[2])
            elif fields[0] == "emit":
                emission_counts[(fields[1], fields[2])] = int(fields[3])
            else:
                raise ValueError(f"unknown record {fields[0]!r} in chunker model")
    return ChunkerModel(add_k, transition_counts, context_totals,
                        emission_counts, state_totals)
