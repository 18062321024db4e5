"""Rule-based synthesis of the final dependency tree.

Noun phrase parses are glued back over their placeholders, then the link
words are attached: prosodic commas hang as leaves on the word before
them; clausal conjunctions (and clausal conjunctive commas) link the
head verbs of similar segments, preferring a left-context head verb that
agrees with the right-hand verb in morphological form or tense; each
subordinating preposition attaches below the verb or adjective on its
left and takes the dependent clause's head verb as its dependent.
Finally the head segment's verb is made the child of the sentence-final
punctuation (the tree root anchor) and any segments still loose are
chained in order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    ROOT,
    DependencyTree,
    LinkWordAttachment,
    LinkWordRole,
    SegmentedSentence,
    Token,
)
from .chunker import NPGroup

CLAUSAL_ROLES = frozenset({
    LinkWordRole.CLAUSAL_CONJUNCTIVE_COMMA,
    LinkWordRole.CLAUSAL_CONJUNCTION,
})

ADJECTIVE_TAGS = frozenset({"JJ", "JJR", "JJS"})
CONTINUOUS_VERB_TAG = "VBG"

# Segments whose first word is one of these never become the head segment.
HEAD_SEGMENT_STOP_WORDS = frozenset({"when", "while", "also", "until", "to"})

TENSE_CLASS = {
    "VBD": "past",
    "VBZ": "present", "VBP": "present", "VB": "present", "MD": "present",
    "VBN": "participle", "VBG": "participle",
}


class SynthesisError(ValueError):
    """A synthesis rule cannot be applied to this input."""


@dataclass(frozen=True)
class VerbDescriptor:
    """Morphological form and tense class of a verb token, derived from
    its Penn tag alone."""

    index: int
    morph: str          # the verb's own tag (VB, VBD, VBZ, VBP, VBN, VBG, MD)
    tense: str | None   # past / present / participle

    @classmethod
    def of(cls, token: Token) -> "VerbDescriptor":
        if not token.is_verb():
            raise ValueError(f"token {token.form!r}/{token.pos} is not a verb")
        return cls(token.index, token.pos, TENSE_CLASS.get(token.pos))


def verbs_agree(a: Token, b: Token) -> bool:
    """Same morphological form or same tense class."""
    da, db = VerbDescriptor.of(a), VerbDescriptor.of(b)
    if da.morph == db.morph:
        return True
    return da.tense is not None and da.tense == db.tense


@dataclass(frozen=True)
class SegmentParse:
    """A segment's span, its (already NP-expanded) local tree, and the
    local positions of its root and head verb.  Empty segments carry a
    None tree."""

    span: tuple[int, int]
    tree: DependencyTree | None
    root: int | None        # local index of the token without a governor
    head_verb: int | None   # == root when the root is a verb, else None

    @property
    def empty(self) -> bool:
        return self.tree is None

    def head_verb_index(self) -> int | None:
        if self.head_verb is None:
            return None
        return self.span[0] + self.head_verb

    def anchor_index(self) -> int | None:
        if self.root is None:
            return None
        return self.span[0] + self.root


def make_segment_parse(span: tuple[int, int], tree: DependencyTree | None) -> SegmentParse:
    if tree is None or len(tree) == 0:
        return SegmentParse(span, None, None, None)
    roots = [i for i, g in enumerate(tree.governors) if g == ROOT]
    if len(roots) != 1:
        raise ValueError(f"segment parse must be proper, found {len(roots)} roots")
    root = roots[0]
    head_verb = root if tree.tokens[root].is_verb() else None
    return SegmentParse(span, tree, root, head_verb)


def _local_root(tree: DependencyTree) -> int:
    roots = [i for i, g in enumerate(tree.governors) if g == ROOT]
    if len(roots) != 1:
        raise ValueError(f"expected exactly one root, found {len(roots)}")
    return roots[0]


def reattach_np(
    segment_tree: DependencyTree,
    placeholder: int,
    group: NPGroup,
    span_parses,
    original_tokens,
) -> DependencyTree:
    """Replace ``placeholder`` with the group's noun phrases.

    The first NP's head inherits the placeholder's governor; each later
    NP's head depends on the head of the NP before it, and a connective
    depends on the head of the NP on its left.  Arcs into the
    placeholder are redirected to the first NP's head."""
    n = len(segment_tree.tokens)
    if not 0 <= placeholder < n:
        raise SynthesisError(f"placeholder position {placeholder} absent from segment tree")
    if len(span_parses) != len(group.spans):
        raise ValueError("one parse per noun phrase span is required")

    # Replacement token sequence with local governor assignments
    # (None marks the group head, which takes the placeholder's arc).
    repl_tokens = []
    repl_govs = []
    head_of = []  # replacement-relative head position per span
    for k, (span, parse) in enumerate(zip(group.spans, span_parses)):
        width = span.end - span.start + 1
        if len(parse.tokens) != width:
            raise ValueError("NP parse does not cover its span")
        offset = len(repl_tokens)
        local_root = _local_root(parse)
        head_of.append(offset + local_root)
        for i, tok in enumerate(parse.tokens):
            repl_tokens.append(original_tokens[span.start + i])
            g = parse.governors[i]
            if g == ROOT:
                repl_govs.append("head0" if k == 0 else head_of[k - 1])
            else:
                repl_govs.append(offset + g)
        if k < len(group.connectives):
            repl_tokens.append(original_tokens[group.connectives[k]])
            repl_govs.append(head_of[k])

    width = len(repl_tokens)
    group_head = head_of[0]

    def remap(old: int) -> int:
        if old < placeholder:
            return old
        if old == placeholder:
            return placeholder + group_head
        return old + width - 1

    tokens = []
    governors = []
    for i in range(n):
        if i == placeholder:
            for r, tok in enumerate(repl_tokens):
                tokens.append(Token(len(tokens), tok.form, tok.pos))
                g = repl_govs[r]
                if g == "head0":
                    old = segment_tree.governors[placeholder]
                    governors.append(ROOT if old == ROOT else remap(old))
                else:
                    governors.append(placeholder + g)
        else:
            tok = segment_tree.tokens[i]
            tokens.append(Token(len(tokens), tok.form, tok.pos))
            g = segment_tree.governors[i]
            governors.append(ROOT if g == ROOT else remap(g))
    return DependencyTree(tuple(tokens), tuple(governors))


def _leftmost_verb_right_of(seg_sent: SegmentedSentence, position: int) -> int | None:
    for j in range(position + 1, len(seg_sent.tokens)):
        if seg_sent.tokens[j].is_verb():
            return j
    return None


def _verbs_in_segment(seg_sent: SegmentedSentence, i: int) -> list[int]:
    start, stop = seg_sent.segments[i]
    return [j for j in range(start, stop) if seg_sent.tokens[j].is_verb()]


def _dependent_verb(seg_sent, i, segment_parses) -> int:
    """Head verb of the nearest segment right of segment i; if no right
    segment has a head verb, the leftmost verb right of the link word."""
    for j in range(i + 1, len(segment_parses)):
        hv = segment_parses[j].head_verb_index()
        if hv is not None:
            return hv
    lw_idx = seg_sent.linkwords[i][0]
    fallback = _leftmost_verb_right_of(seg_sent, lw_idx)
    if fallback is None:
        raise SynthesisError(
            f"no verb to the right of link word {seg_sent.tokens[lw_idx].form!r}"
        )
    return fallback


def attach_prosodic_comma(seg_sent: SegmentedSentence, i: int) -> LinkWordAttachment:
    """The comma hangs as a leaf on the word just before it."""
    lw_idx, role = seg_sent.linkwords[i]
    if role is not LinkWordRole.PROSODIC_COMMA:
        raise ValueError(f"link word {i} is {role.value}, not a prosodic comma")
    start, stop = seg_sent.segments[i]
    if start == stop:
        raise SynthesisError("prosodic comma follows an empty segment")
    return LinkWordAttachment(governor=stop - 1, dependent=None)


def attach_clausal_conjunction(
    seg_sent: SegmentedSentence, i: int, segment_parses
) -> LinkWordAttachment:
    """Find the governor and dependent verbs of a clausal conjunction or
    clausal conjunctive comma.

    The dependent is the head verb of the nearest segment to the right.
    The governor is the head verb of the leftmost earlier segment that
    agrees with the dependent in morphological form or tense; with no
    agreeing segment, the rightmost verb of the segment directly left.
    A conjunction after an empty segment instead attaches below the
    first verb to its right and has no dependent."""
    lw_idx, role = seg_sent.linkwords[i]
    if role not in CLAUSAL_ROLES:
        raise ValueError(f"link word {i} is {role.value}, not clausal")

    if seg_sent.segment_length(i) == 0:
        governor = _leftmost_verb_right_of(seg_sent, lw_idx)
        if governor is None:
            raise SynthesisError(
                f"no verb to the right of sentence-initial {seg_sent.tokens[lw_idx].form!r}"
            )
        return LinkWordAttachment(governor=governor, dependent=None)

    dependent = _dependent_verb(seg_sent, i, segment_parses)
    dep_token = seg_sent.tokens[dependent]

    governor = None
    for j in range(i - 1, -1, -1):
        hv = segment_parses[j].head_verb_index()
        if hv is None:
            continue
        if verbs_agree(seg_sent.tokens[hv], dep_token):
            governor = hv  # keep scanning: the leftmost agreeing segment wins
    if governor is None:
        verbs = _verbs_in_segment(seg_sent, i)
        if verbs:
            governor = verbs[-1]
        else:
            governor = segment_parses[i].anchor_index()
    return LinkWordAttachment(governor=governor, dependent=dependent)


def find_head_segment(seg_sent: SegmentedSentence, segment_parses, governors) -> int:
    """Index of the segment that depends on no other segment.

    First segment whose head verb is still ungoverned, is not a
    continuous verb, and whose first word is not a stop word; failing
    that, the first segment containing any verb; failing that, the first
    non-empty segment."""
    for j, sp in enumerate(segment_parses):
        hv = sp.head_verb_index()
        if hv is None:
            continue
        if governors[hv] is not None:
            continue
        if seg_sent.tokens[hv].pos == CONTINUOUS_VERB_TAG:
            continue
        start, _stop = sp.span
        if seg_sent.tokens[start].form.lower() in HEAD_SEGMENT_STOP_WORDS:
            continue
        return j
    for j in range(len(segment_parses)):
        if _verbs_in_segment(seg_sent, j):
            return j
    for j, sp in enumerate(segment_parses):
        if not sp.empty:
            return j
    raise SynthesisError("every segment is empty; no head segment exists")


def head_segment_target(seg_sent: SegmentedSentence, segment_parses, j: int) -> int:
    """Token of segment j that the final punctuation will govern: its
    head verb, else its rightmost verb, else its last token."""
    hv = segment_parses[j].head_verb_index()
    if hv is not None:
        return hv
    verbs = _verbs_in_segment(seg_sent, j)
    if verbs:
        return verbs[-1]
    _start, stop = segment_parses[j].span
    return stop - 1


def attach_subordinating_preposition(
    seg_sent: SegmentedSentence, i: int, segment_parses, governors
) -> LinkWordAttachment:
    """Attach a subordinating preposition and its dependent clause.

    The dependent is the head verb of the clause to the right.  The
    governor is the verb immediately left of the preposition if there is
    one, else an adjective immediately left; a sentence-initial
    subordinator instead attaches below the main segment's head verb,
    and otherwise the preposition falls back to its own segment's head
    verb (or rightmost verb, or the word just before it)."""
    lw_idx, role = seg_sent.linkwords[i]
    if role is not LinkWordRole.SUBORDINATING_PREPOSITION:
        raise ValueError(f"link word {i} is {role.value}, not a subordinating preposition")

    dependent = _dependent_verb(seg_sent, i, segment_parses)

    governor = None
    left = lw_idx - 1
    if left >= 0 and seg_sent.tokens[left].is_verb():
        governor = left
    elif left >= 0 and seg_sent.tokens[left].pos in ADJECTIVE_TAGS:
        governor = left
    elif seg_sent.segment_length(i) == 0:
        tentative = list(governors)
        tentative[dependent] = lw_idx
        head = find_head_segment(seg_sent, segment_parses, tentative)
        governor = head_segment_target(seg_sent, segment_parses, head)
    else:
        hv = segment_parses[i].head_verb_index()
        if hv is not None:
            governor = hv
        else:
            verbs = _verbs_in_segment(seg_sent, i)
            governor = verbs[-1] if verbs else left
    if governor is None:
        raise SynthesisError(
            f"no attachment point for subordinating {seg_sent.tokens[lw_idx].form!r}"
        )
    return LinkWordAttachment(governor=governor, dependent=dependent)


def chain_remaining_segments(
    seg_sent: SegmentedSentence, segment_parses, governors, head_index: int
) -> list[tuple[int, int]]:
    """Arcs (dependent, governor) chaining every still-loose segment to
    the nearest linked segment on its left (the head segment when none
    is)."""
    arcs = []
    linked = set()  # indices of segments whose anchor has a governor
    chained = set()
    for j, sp in enumerate(segment_parses):
        anchor = sp.anchor_index()
        if anchor is not None and governors[anchor] is not None:
            linked.add(j)

    head_anchor = segment_parses[head_index].anchor_index()
    for j, sp in enumerate(segment_parses):
        anchor = sp.anchor_index()
        if anchor is None or j in linked or j in chained:
            continue
        if j == head_index:
            # Only reachable when the root pass attached a non-root
            # token of a verbless head segment: hang the parse root
            # under that token.
            gov = head_segment_target(seg_sent, segment_parses, j)
        else:
            left = [k for k in (linked | chained) if k < j]
            gov = (segment_parses[max(left)].anchor_index()
                   if left else head_anchor)
        arcs.append((anchor, gov))
        chained.add(j)
    return arcs


def synthesize(
    seg_sent: SegmentedSentence,
    compressed_parses,
    extractions,
    np_parses,
    trace: list | None = None,
) -> DependencyTree:
    """Assemble the full-sentence tree.

    ``compressed_parses[i]`` is the proper tree over segment i's
    compressed tokens (None for empty segments), ``extractions[i]`` the
    segment's NPExtraction, and ``np_parses[i]`` maps each placeholder
    position to the parses of its group's spans."""
    n = len(seg_sent.tokens)
    governors: list[int | None] = [None] * n

    def log(msg):
        if trace is not None:
            trace.append(msg)

    def name(idx):
        return f"{seg_sent.tokens[idx].form}@{idx}"

    # Expand placeholders and map each segment's local arcs into the
    # sentence.
    segment_parses = []
    for i, (start, stop) in enumerate(seg_sent.segments):
        if start == stop:
            segment_parses.append(make_segment_parse((start, stop), None))
            continue
        tree = compressed_parses[i]
        extraction = extractions[i]
        for p in sorted(extraction.groups, reverse=True):
            tree = reattach_np(tree, p, extraction.groups[p],
                               np_parses[i][p], extraction.original)
        if len(tree) != stop - start:
            raise RuntimeError("expanded segment tree does not cover its segment")
        sp = make_segment_parse((start, stop), tree)
        segment_parses.append(sp)
        for local, g in enumerate(tree.governors):
            if g != ROOT:
                governors[start + local] = start + g
        log(f"segment {i}: root={name(start + sp.root)}"
            + (f" head-verb={name(sp.head_verb_index())}" if sp.head_verb is not None else " (no head verb)"))

    # The sentence-final punctuation anchors the tree.
    final_idx = seg_sent.linkwords[-1][0]
    governors[final_idx] = ROOT

    for i, (lw_idx, role) in enumerate(seg_sent.linkwords):
        if role is LinkWordRole.PROSODIC_COMMA:
            att = attach_prosodic_comma(seg_sent, i)
            governors[lw_idx] = att.governor
            log(f"prosodic-comma {name(lw_idx)} -> governor {name(att.governor)}")

    for i, (lw_idx, role) in enumerate(seg_sent.linkwords):
        if role in CLAUSAL_ROLES:
            att = attach_clausal_conjunction(seg_sent, i, segment_parses)
            governors[lw_idx] = att.governor
            log(f"clausal {name(lw_idx)} -> governor {name(att.governor)}"
                + (f", dependent {name(att.dependent)}" if att.dependent is not None else ""))
            if att.dependent is not None:
                governors[att.dependent] = lw_idx

    for i, (lw_idx, role) in enumerate(seg_sent.linkwords):
        if role is LinkWordRole.SUBORDINATING_PREPOSITION:
            att = attach_subordinating_preposition(seg_sent, i, segment_parses, governors)
            governors[lw_idx] = att.governor
            log(f"subordinator {name(lw_idx)} -> governor {name(att.governor)}"
                + (f", dependent {name(att.dependent)}" if att.dependent is not None else ""))
            if att.dependent is not None:
                governors[att.dependent] = lw_idx

    if any(not sp.empty for sp in segment_parses):
        head = find_head_segment(seg_sent, segment_parses, governors)
        target = head_segment_target(seg_sent, segment_parses, head)
        governors[target] = final_idx
        log(f"head-segment {head}: {name(target)} -> governor {name(final_idx)}")
        for dep, gov in chain_remaining_segments(seg_sent, segment_parses, governors, head):
            governors[dep] = gov
            log(f"chain {name(dep)} -> governor {name(gov)}")

    if any(g is None for g in governors):
        loose = [i for i, g in enumerate(governors) if g is None]
        raise RuntimeError(f"synthesis left tokens without governors: {loose}")
    return DependencyTree(seg_sent.tokens, tuple(governors))
