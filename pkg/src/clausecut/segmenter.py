"""Splitting a role-annotated sentence into segments and link words.

A boundary is opened at every prosodic comma, clausal conjunctive comma,
clausal conjunction, and subordinating preposition.  Logical conjunctive
commas, logical conjunctions, and non-segmenting prepositions stay
inside segments.  The sentence-final punctuation always becomes the last
link word; a synthetic "." is appended when the input lacks one.
"""

from __future__ import annotations

from .core import (
    FINAL_PUNCT_TAG,
    SEGMENTING_ROLES,
    LinkWordRole,
    SegmentedSentence,
    Token,
)


def segment(tokens, roles) -> SegmentedSentence:
    """Partition ``tokens`` into the alternating segment/link-word form.

    ``roles`` must assign a role to every token (NOT_LINK_WORD for
    ordinary ones).  A segmenting link word in final position still
    leaves an (empty) segment before the terminal punctuation.
    """
    if len(tokens) != len(roles):
        raise ValueError("tokens and roles must be the same length")
    tokens = list(tokens)
    # Unannotated tokens (None in corpus files) are ordinary words.
    roles = [r if r is not None else LinkWordRole.NOT_LINK_WORD for r in roles]

    if tokens and tokens[-1].pos == FINAL_PUNCT_TAG:
        final_index = len(tokens) - 1
        final_role = roles[final_index]
        body = len(tokens) - 1
    else:
        # Synthesize a terminal punctuation token so the last link word
        # always exists.
        tokens.append(Token(len(tokens), ".", FINAL_PUNCT_TAG))
        final_index = len(tokens) - 1
        final_role = LinkWordRole.NOT_LINK_WORD
        body = len(tokens) - 1

    segments = []
    linkwords = []
    seg_start = 0
    for i in range(body):
        if roles[i] in SEGMENTING_ROLES:
            segments.append((seg_start, i))
            linkwords.append((i, roles[i]))
            seg_start = i + 1
    segments.append((seg_start, body))
    linkwords.append((final_index, final_role))
    return SegmentedSentence(tuple(tokens), tuple(segments), tuple(linkwords))


def reconstruct_tokens(seg_sent: SegmentedSentence) -> tuple[Token, ...]:
    """Inverse of segmentation: the token sequence in original order."""
    out = []
    for (start, stop), (lw, _) in zip(seg_sent.segments, seg_sent.linkwords):
        out.extend(seg_sent.tokens[start:stop])
        out.append(seg_sent.tokens[lw])
    return tuple(out)


def format_segmentation(seg_sent: SegmentedSentence) -> str:
    """One segment per line; link words on their own lines prefixed
    LW: with the role name."""
    lines = []
    for i, (start, stop) in enumerate(seg_sent.segments):
        lines.append(" ".join(t.form for t in seg_sent.tokens[start:stop]))
        lw, role = seg_sent.linkwords[i]
        lines.append(f"LW: {seg_sent.tokens[lw].form} [{role.value}]")
    return "\n".join(lines)
