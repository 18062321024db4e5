"""Shared domain types: tokens, dependency trees, link-word roles,
segmented sentences, and the tab-separated corpus file format.

All values here are immutable after construction and safe to share
between threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

# Governor value marking the root of a dependency tree.
ROOT = -1

# Penn Treebank tagset, frozen so one-hot layouts and model files stay
# stable.  Word tags first, punctuation and symbol tags after.
PENN_TAGS = (
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD",
    "NN", "NNP", "NNPS", "NNS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR",
    "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG", "VBN", "VBP",
    "VBZ", "WDT", "WP", "WP$", "WRB",
    ",", ".", ":", "(", ")", "``", "''", "$", "#",
)
TAG_INDEX = {t: i for i, t in enumerate(PENN_TAGS)}

COMMA_TAG = ","
FINAL_PUNCT_TAG = "."
CONJUNCTION_TAG = "CC"
PREPOSITION_TAG = "IN"

BIO_TAGS = ("B-NP", "I-NP", "O")


class LinkWordRole(str, enum.Enum):
    """Disambiguated role of a comma, coordinating conjunction, or
    preposition.  Ordinary tokens carry NOT_LINK_WORD."""

    PROSODIC_COMMA = "ProsodicComma"
    LOGICAL_CONJUNCTIVE_COMMA = "LogicalConjunctiveComma"
    CLAUSAL_CONJUNCTIVE_COMMA = "ClausalConjunctiveComma"
    LOGICAL_CONJUNCTION = "LogicalConjunction"
    CLAUSAL_CONJUNCTION = "ClausalConjunction"
    SUBORDINATING_PREPOSITION = "SubordinatingPreposition"
    NON_SEGMENTING_PREPOSITION = "NonSegmentingPreposition"
    NOT_LINK_WORD = "NotLinkWord"


ROLE_BY_NAME = {r.value: r for r in LinkWordRole}

COMMA_ROLES = frozenset({
    LinkWordRole.PROSODIC_COMMA,
    LinkWordRole.LOGICAL_CONJUNCTIVE_COMMA,
    LinkWordRole.CLAUSAL_CONJUNCTIVE_COMMA,
})
CONJUNCTION_ROLES = frozenset({
    LinkWordRole.LOGICAL_CONJUNCTION,
    LinkWordRole.CLAUSAL_CONJUNCTION,
})
PREPOSITION_ROLES = frozenset({
    LinkWordRole.SUBORDINATING_PREPOSITION,
    LinkWordRole.NON_SEGMENTING_PREPOSITION,
})

# Roles at which a sentence is split into segments.
SEGMENTING_ROLES = frozenset({
    LinkWordRole.PROSODIC_COMMA,
    LinkWordRole.CLAUSAL_CONJUNCTIVE_COMMA,
    LinkWordRole.CLAUSAL_CONJUNCTION,
    LinkWordRole.SUBORDINATING_PREPOSITION,
})


def role_allowed_for_tag(role: LinkWordRole, pos: str) -> bool:
    """Comma roles only on commas, conjunction roles only on CC,
    preposition roles only on IN.  NOT_LINK_WORD is allowed anywhere."""
    if role in COMMA_ROLES:
        return pos == COMMA_TAG
    if role in CONJUNCTION_ROLES:
        return pos == CONJUNCTION_TAG
    if role in PREPOSITION_ROLES:
        return pos == PREPOSITION_TAG
    return True


@dataclass(frozen=True)
class Token:
    """One word: position in its token sequence, surface form, Penn tag."""

    index: int
    form: str
    pos: str

    def is_verb(self) -> bool:
        # Modals count as verbs for leftmost/rightmost-verb searches.
        return self.pos.startswith("VB") or self.pos == "MD"


@dataclass(frozen=True)
class ValidityReport:
    """Structural report for a governor assignment."""

    root_count: int
    cycle_list: tuple[tuple[int, ...], ...]
    connected: bool

    @property
    def proper(self) -> bool:
        return self.root_count == 1 and not self.cycle_list and self.connected


@dataclass(frozen=True)
class DependencyTree:
    """A governor per token.  May be a proper tree or a defective graph;
    defects are reported by validate_tree, never hidden."""

    tokens: tuple[Token, ...]
    governors: tuple[int, ...]
    labels: tuple[str | None, ...] | None = None

    def __post_init__(self):
        if len(self.tokens) != len(self.governors):
            raise ValueError("token/governor length mismatch")
        for i, g in enumerate(self.governors):
            if g == i:
                raise ValueError(f"token {i} governs itself")
            if g != ROOT and not 0 <= g < len(self.tokens):
                raise ValueError(f"governor {g} of token {i} out of range")

    def __len__(self) -> int:
        return len(self.tokens)


def validate_tree(tree: DependencyTree) -> ValidityReport:
    """Report root count, cycles, and connectivity of a governor
    assignment.  Defects are reported, not raised."""
    n = len(tree.tokens)
    if n == 0:
        raise ValueError("empty tree")
    govs = tree.governors
    root_count = sum(1 for g in govs if g == ROOT)

    # Each token has one outgoing arc, so cycles are found by walking
    # governor chains and recording where a walk meets itself.
    state = [0] * n  # 0 unvisited, 1 on current walk, 2 done
    cycles = []
    for start in range(n):
        if state[start]:
            continue
        path = []
        cur = start
        while cur != ROOT and state[cur] == 0:
            state[cur] = 1
            path.append(cur)
            cur = govs[cur]
        if cur != ROOT and state[cur] == 1:
            cycle = path[path.index(cur):]
            cycles.append(tuple(sorted(cycle)))
        for t in path:
            state[t] = 2

    # Connectivity over the undirected arc set.
    comp = list(range(n))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for i, g in enumerate(govs):
        if g != ROOT:
            comp[find(i)] = find(g)
    connected = len({find(i) for i in range(n)}) == 1

    return ValidityReport(root_count, tuple(cycles), connected)


@dataclass(frozen=True)
class SegmentedSentence:
    """Alternating segments and link words:

        (segment 0) linkword 0 (segment 1) linkword 1 ... (segment n) linkword n

    Segment spans are half-open [start, stop) over ``tokens`` and may be
    empty.  The last link word is always the sentence-final punctuation
    (synthesized as "." when the input lacks one, in which case
    ``tokens`` is one longer than the input)."""

    tokens: tuple[Token, ...]
    segments: tuple[tuple[int, int], ...]
    linkwords: tuple[tuple[int, LinkWordRole], ...]

    def __post_init__(self):
        if len(self.segments) != len(self.linkwords):
            raise ValueError("segments and linkwords must alternate one-to-one")
        order = []
        for (start, stop), (lw, _) in zip(self.segments, self.linkwords):
            order.extend(range(start, stop))
            order.append(lw)
        if order != list(range(len(self.tokens))):
            raise ValueError("segments and linkwords do not partition the sentence")

    def segment_tokens(self, i: int) -> tuple[Token, ...]:
        start, stop = self.segments[i]
        return self.tokens[start:stop]

    def segment_length(self, i: int) -> int:
        start, stop = self.segments[i]
        return stop - start


@dataclass(frozen=True)
class LinkWordAttachment:
    """Outcome of a synthesis rule for one link word: the token it
    attaches to (its governor) and the token attached to it, if any."""

    governor: int | None
    dependent: int | None


@dataclass(frozen=True)
class Sentence:
    """One corpus sentence.  ``governors`` and ``roles`` hold None where
    the file had "_"; ``bio`` is None when the sixth column is absent."""

    tokens: tuple[Token, ...]
    governors: tuple[int | None, ...]
    roles: tuple[LinkWordRole | None, ...]
    bio: tuple[str, ...] | None = None

    def __len__(self) -> int:
        return len(self.tokens)

    def fully_parsed(self) -> bool:
        return all(g is not None for g in self.governors)

    def tree(self) -> DependencyTree:
        if not self.fully_parsed():
            raise ValueError("sentence has unannotated governors")
        return DependencyTree(self.tokens, tuple(self.governors))


class CorpusFormatError(ValueError):
    """Raised for malformed corpus files; message names the line."""


def _parse_governor(text: str, line_no: int) -> int | None:
    if text == "_":
        return None
    if text == "ROOT":
        return ROOT
    try:
        value = int(text)
    except ValueError:
        raise CorpusFormatError(
            f"line {line_no}: GOVERNOR must be an index, ROOT or _, got {text!r}"
        ) from None
    if value < 0:
        raise CorpusFormatError(f"line {line_no}: negative governor index {value}")
    return value


def _finish_sentence(rows, start_line) -> Sentence:
    tokens = []
    governors = []
    roles = []
    bio = []
    has_bio = any(len(r) == 6 for r, _ in rows)
    for cols, line_no in rows:
        if has_bio and len(cols) != 6:
            raise CorpusFormatError(f"line {line_no}: sentence mixes 5- and 6-column rows")
        idx_text, form, pos, gov_text, role_text = cols[:5]
        try:
            idx = int(idx_text)
        except ValueError:
            raise CorpusFormatError(f"line {line_no}: INDEX not an integer: {idx_text!r}") from None
        if idx != len(tokens):
            raise CorpusFormatError(
                f"line {line_no}: INDEX {idx} out of order (expected {len(tokens)})"
            )
        if not form:
            raise CorpusFormatError(f"line {line_no}: empty FORM column")
        if pos not in TAG_INDEX:
            raise CorpusFormatError(f"line {line_no}: unknown POS tag {pos!r}")
        gov = _parse_governor(gov_text, line_no)
        if role_text == "_":
            role = None
        elif role_text in ROLE_BY_NAME:
            role = ROLE_BY_NAME[role_text]
            if not role_allowed_for_tag(role, pos):
                raise CorpusFormatError(
                    f"line {line_no}: role {role_text} not allowed on POS {pos}"
                )
        else:
            raise CorpusFormatError(f"line {line_no}: unknown ROLE {role_text!r}")
        if has_bio:
            if cols[5] not in BIO_TAGS:
                raise CorpusFormatError(f"line {line_no}: unknown chunk tag {cols[5]!r}")
            bio.append(cols[5])
        tokens.append(Token(idx, form, pos))
        governors.append(gov)
        roles.append(role)

    for i, g in enumerate(governors):
        if g is None or g == ROOT:
            continue
        if g >= len(tokens):
            raise CorpusFormatError(
                f"line {start_line + i}: governor {g} outside sentence of {len(tokens)} tokens"
            )
        if g == i:
            raise CorpusFormatError(f"line {start_line + i}: token governs itself")
    return Sentence(
        tuple(tokens), tuple(governors), tuple(roles),
        tuple(bio) if has_bio else None,
    )


def read_corpus(path) -> list[Sentence]:
    """Read a corpus file: one token per line, blank line between
    sentences, columns INDEX FORM POS GOVERNOR ROLE [BIO], comments
    starting with '#'."""
    sentences = []
    rows = []
    start_line = None
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if line.startswith("#"):
                continue
            if not line.strip():
                if rows:
                    sentences.append(_finish_sentence(rows, start_line))
                    rows = []
                    start_line = None
                continue
            cols = line.split("\t")
            if len(cols) not in (5, 6):
                raise CorpusFormatError(
                    f"line {line_no}: expected 5 or 6 tab-separated columns, got {len(cols)}"
                )
            if not rows:
                start_line = line_no
            rows.append((cols, line_no))
    if rows:
        sentences.append(_finish_sentence(rows, start_line))
    return sentences


def format_sentence(sentence: Sentence) -> str:
    lines = []
    for i, token in enumerate(sentence.tokens):
        gov = sentence.governors[i]
        gov_text = "_" if gov is None else ("ROOT" if gov == ROOT else str(gov))
        role = sentence.roles[i]
        role_text = "_" if role is None else role.value
        cols = [str(token.index), token.form, token.pos, gov_text, role_text]
        if sentence.bio is not None:
            cols.append(sentence.bio[i])
        lines.append("\t".join(cols))
    return "\n".join(lines)


def write_corpus(sentences, path) -> None:
    """Write sentences in the canonical corpus format (one blank line
    between sentences, trailing newline)."""
    with open(path, "w", encoding="utf-8") as handle:
        for k, sentence in enumerate(sentences):
            if k:
                handle.write("\n")
            handle.write(format_sentence(sentence))
            handle.write("\n")
