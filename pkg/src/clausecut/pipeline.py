"""End-to-end orchestration: tag, disambiguate, segment, bracket,
group, extract, parse noun phrases and compressed segments, synthesize.

Also houses the whole-sentence baseline parser, the model bundle, and
the derivation of segment/NP training material from a fully annotated
corpus.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .core import (
    FINAL_PUNCT_TAG,
    ROOT,
    SEGMENTING_ROLES,
    DependencyTree,
    LinkWordRole,
    SegmentedSentence,
    Sentence,
    Token,
    ValidityReport,
    validate_tree,
)
from . import chunker as np_chunker
from . import parser as dep_parser
from . import roles as lw_roles
from . import segmenter
from . import synthesizer
from . import tagger as pos_tagger


class PipelineError(ValueError):
    """A pipeline stage failed; the message names the stage."""


@dataclass
class ModelBundle:
    """All trained models the pipeline needs.  The tagger is optional
    (pre-tagged input bypasses it), the baseline model is a segment-mode
    model trained on whole sentences."""

    roles: lw_roles.RoleModels
    chunker: np_chunker.ChunkerModel
    np_model: dep_parser.ParserModel
    segment_model: dep_parser.ParserModel
    baseline_model: dep_parser.ParserModel | None = None
    tagger: pos_tagger.TaggerModel | None = None


BUNDLE_FILES = {
    "roles": "roles.model",
    "chunker": "chunker.model",
    "np_model": "parser-np.model",
    "segment_model": "parser-segment.model",
    "baseline_model": "parser-baseline.model",
    "tagger": "tagger.model",
}


def save_bundle(bundle: ModelBundle, directory) -> None:
    os.makedirs(directory, exist_ok=True)
    lw_roles.save_role_models(bundle.roles, os.path.join(directory, BUNDLE_FILES["roles"]))
    np_chunker.save_chunker(bundle.chunker, os.path.join(directory, BUNDLE_FILES["chunker"]))
    dep_parser.save_parser(bundle.np_model, os.path.join(directory, BUNDLE_FILES["np_model"]))
    dep_parser.save_parser(bundle.segment_model,
                           os.path.join(directory, BUNDLE_FILES["segment_model"]))
    if bundle.baseline_model is not None:
        dep_parser.save_parser(bundle.baseline_model,
                               os.path.join(directory, BUNDLE_FILES["baseline_model"]))
    if bundle.tagger is not None:
        pos_tagger.save_tagger(bundle.tagger, os.path.join(directory, BUNDLE_FILES["tagger"]))


def load_bundle(directory) -> ModelBundle:
    def path(key):
        return os.path.join(directory, BUNDLE_FILES[key])

    for key in ("roles", "chunker", "np_model", "segment_model"):
        if not os.path.exists(path(key)):
            raise PipelineError(f"model bundle is missing {BUNDLE_FILES[key]} in {directory}")
    baseline = None
    if os.path.exists(path("baseline_model")):
        baseline = dep_parser.load_parser(path("baseline_model"))
    tag_model = None
    if os.path.exists(path("tagger")):
        tag_model = pos_tagger.load_tagger(path("tagger"))
    return ModelBundle(
        roles=lw_roles.load_role_models(path("roles")),
        chunker=np_chunker.load_chunker(path("chunker")),
        np_model=dep_parser.load_parser(path("np_model")),
        segment_model=dep_parser.load_parser(path("segment_model")),
        baseline_model=baseline,
        tagger=tag_model,
    )


def normalize_roles(tokens, roles) -> tuple[LinkWordRole, ...]:
    """Demote link-word roles that could never be attached, so synthesis
    is total on arbitrary input:

    - a prosodic comma directly after another boundary (empty segment)
      becomes a logical conjunctive comma;
    - a clausal conjunction/comma with no verb anywhere to its right
      becomes logical;
    - a subordinating preposition with no verb to its right becomes
      non-segmenting."""
    roles = list(roles)
    body = len(tokens)
    if tokens and tokens[-1].pos == FINAL_PUNCT_TAG:
        body -= 1
    has_verb_right = [False] * (body + 1)
    for i in range(body - 1, -1, -1):
        has_verb_right[i] = has_verb_right[i + 1] or tokens[i].is_verb()

    seg_len = 0
    for i in range(body):
        role = roles[i]
        if role in SEGMENTING_ROLES:
            demoted = None
            if role is LinkWordRole.PROSODIC_COMMA:
                if seg_len == 0:
                    demoted = LinkWordRole.LOGICAL_CONJUNCTIVE_COMMA
            elif role is LinkWordRole.CLAUSAL_CONJUNCTIVE_COMMA:
                if not has_verb_right[i + 1]:
                    demoted = LinkWordRole.LOGICAL_CONJUNCTIVE_COMMA
            elif role is LinkWordRole.CLAUSAL_CONJUNCTION:
                if not has_verb_right[i + 1]:
                    demoted = LinkWordRole.LOGICAL_CONJUNCTION
            elif role is LinkWordRole.SUBORDINATING_PREPOSITION:
                if not has_verb_right[i + 1]:
                    demoted = LinkWordRole.NON_SEGMENTING_PREPOSITION
            if demoted is None:
                seg_len = 0
            else:
                roles[i] = demoted
                seg_len += 1
        else:
            seg_len += 1
    return tuple(roles)


@dataclass
class PipelineResult:
    """Everything one divide-and-conquer parse produced."""

    tree: DependencyTree
    report: ValidityReport
    roles: tuple[LinkWordRole, ...]
    seg_sent: SegmentedSentence
    spans: list                      # sentence-level NPSpan list
    trace: list[str] = field(default_factory=list)
    synthetic_final: bool = False

    @property
    def bio(self) -> tuple[str, ...]:
        out = ["O"] * len(self.tree.tokens)
        for span in self.spans:
            out[span.start] = "B-NP"
            for i in range(span.start + 1, span.end + 1):
                out[i] = "I-NP"
        return tuple(out)


def _as_tokens(sentence, bundle: ModelBundle):
    """Accept Token sequences, Sentence objects, or plain word lists
    (the latter require a tagger)."""
    if isinstance(sentence, Sentence):
        return tuple(sentence.tokens)
    items = list(sentence)
    if not items:
        raise PipelineError("input: empty sentence")
    if isinstance(items[0], Token):
        return tuple(items)
    if bundle.tagger is None:
        raise PipelineError("tagging: raw text given but the bundle has no tagger")
    tags = pos_tagger.tag(bundle.tagger, [str(w) for w in items])
    return tuple(Token(i, str(w), t) for i, (w, t) in enumerate(zip(items, tags)))


def run_dc(sentence, bundle: ModelBundle, repair: bool = False,
           want_trace: bool = False) -> PipelineResult:
    """The divide-and-conquer pipeline on one sentence."""
    tokens = _as_tokens(sentence, bundle)
    if not tokens:
        raise PipelineError("input: empty sentence")

    try:
        roles = lw_roles.disambiguate(bundle.roles, tokens)
    except ValueError as exc:
        raise PipelineError(f"disambiguation: {exc}") from exc
    roles = normalize_roles(tokens, roles)

    seg_sent = segmenter.segment(tokens, roles)
    synthetic = len(seg_sent.tokens) > len(tokens)

    group_forming = bundle.roles.lexicon.group_forming
    compressed_parses = []
    extractions = []
    np_parses = []
    all_spans = []
    for i, (start, stop) in enumerate(seg_sent.segments):
        if start == stop:
            compressed_parses.append(None)
            extractions.append(None)
            np_parses.append(None)
            continue
        seg_tokens = seg_sent.tokens[start:stop]
        seg_roles = roles[start:stop]
        try:
            spans = np_chunker.bracket(bundle.chunker, seg_tokens)
            groups = np_chunker.group_nps(seg_tokens, spans, seg_roles, group_forming)
            extraction = np_chunker.extract_nps(seg_tokens, groups)
        except ValueError as exc:
            raise PipelineError(f"chunking: {exc}") from exc
        all_spans.extend(
            np_chunker.NPSpan(start + s.start, start + s.end) for s in spans
        )
        parses = {}
        for pos, group in extraction.groups.items():
            span_trees = []
            for span in group.spans:
                np_tokens = tuple(
                    Token(k, t.form, t.pos)
                    for k, t in enumerate(seg_tokens[span.start:span.end + 1])
                )
                tree = dep_parser.select_governors(bundle.np_model, np_tokens)
                span_trees.append(dep_parser.repair_tree(tree, bundle.np_model))
            parses[pos] = span_trees
        seg_tree = dep_parser.select_governors(bundle.segment_model, extraction.compressed)
        seg_tree = dep_parser.repair_tree(seg_tree, bundle.segment_model)
        compressed_parses.append(seg_tree)
        extractions.append(extraction)
        np_parses.append(parses)

    trace: list[str] = [] if want_trace else None
    try:
        tree = synthesizer.synthesize(seg_sent, compressed_parses, extractions,
                                      np_parses, trace=trace)
    except synthesizer.SynthesisError as exc:
        raise PipelineError(f"synthesis: {exc}") from exc

    if synthetic:
        tree = _strip_final(tree)
    if repair:
        tree = dep_parser.repair_tree(tree, bundle.segment_model)
    report = validate_tree(tree)
    return PipelineResult(
        tree=tree,
        report=report,
        roles=roles,
        seg_sent=seg_sent,
        spans=all_spans,
        trace=trace or [],
        synthetic_final=synthetic,
    )


def _strip_final(tree: DependencyTree) -> DependencyTree:
    """Drop the synthetic terminal punctuation again; whatever hung on
    it becomes root-governed."""
    last = len(tree.tokens) - 1
    governors = [
        ROOT if g == last else g
        for g in tree.governors[:last]
    ]
    return DependencyTree(tree.tokens[:last], tuple(governors))


def parse_dc(sentence, bundle: ModelBundle, repair: bool = False) -> DependencyTree:
    """Divide-and-conquer parse; see run_dc for the full result."""
    return run_dc(sentence, bundle, repair=repair).tree


def parse_baseline(sentence, bundle: ModelBundle, repair: bool = False) -> DependencyTree:
    """Whole-sentence greedy parse with no segmentation."""
    model = bundle.baseline_model
    if model is None:
        raise PipelineError("baseline: bundle has no baseline parser model")
    tokens = _as_tokens(sentence, bundle)
    if not tokens:
        raise PipelineError("input: empty sentence")
    tree = dep_parser.select_governors(model, tokens)
    if repair:
        tree = dep_parser.repair_tree(tree, model)
    return tree


# --- derivation of training material -------------------------------------

def _role_list(sentence: Sentence):
    return tuple(
        r if r is not None else LinkWordRole.NOT_LINK_WORD for r in sentence.roles
    )


def _gold_np_tree(sentence: Sentence, span) -> DependencyTree:
    """Gold sub-tree over one NP span: arcs inside the span are kept,
    the span head (governor outside) becomes the local root."""
    tokens = tuple(
        Token(k, t.form, t.pos)
        for k, t in enumerate(sentence.tokens[span.start:span.end + 1])
    )
    governors = []
    for i in span.indices():
        g = sentence.governors[i]
        if g is not None and span.start <= g <= span.end:
            governors.append(g - span.start)
        else:
            governors.append(ROOT)
    return DependencyTree(tokens, tuple(governors))


def _gold_segment(sentence: Sentence, roles, start: int, stop: int, group_forming):
    """Gold extraction + compressed tree for one segment.

    NP groups collapse to their placeholder; arcs leaving the segment
    (or pointing at the removed link words) become the local root."""
    seg_tokens = sentence.tokens[start:stop]
    seg_bio = sentence.bio[start:stop]
    spans = np_chunker.spans_from_bio(seg_bio)
    groups = np_chunker.group_nps(seg_tokens, spans, roles[start:stop], group_forming)
    extraction = np_chunker.extract_nps(seg_tokens, groups)

    # Where does each original (segment-local) position land in the
    # compressed sequence?
    comp_pos = {}   # original local position -> compressed position
    orig_of = {}    # compressed position of a survivor -> original local
    orig = 0
    for pos in range(len(extraction.compressed)):
        group = extraction.groups.get(pos)
        if group is None:
            comp_pos[orig] = pos
            orig_of[pos] = orig
            orig += 1
        else:
            for i in range(group.start, group.end + 1):
                comp_pos[i] = pos
            orig = group.end + 1

    def local_gov(orig_local: int) -> int:
        g = sentence.governors[start + orig_local]
        if g is None or g == ROOT or not start <= g < stop:
            return ROOT
        return comp_pos[g - start]

    governors = []
    for pos in range(len(extraction.compressed)):
        group = extraction.groups.get(pos)
        if group is None:
            governors.append(local_gov(orig_of[pos]))
        else:
            # The group's head is the token governed from outside the
            # group; the placeholder inherits that arc.
            exterior = ROOT
            for i in range(group.start, group.end + 1):
                g = sentence.governors[start + i]
                inside = (g is not None
                          and start + group.start <= g <= start + group.end)
                if not inside:
                    exterior = local_gov(i)
                    break
            governors.append(exterior)
    return extraction, DependencyTree(extraction.compressed, tuple(governors))


def derive_np_trees(corpus, on_error="raise") -> list[DependencyTree]:
    """Gold training trees for the NP-mode parser."""
    trees = []
    for num, sentence in enumerate(corpus):
        if sentence.bio is None or not sentence.fully_parsed():
            continue
        for span in np_chunker.spans_from_bio(sentence.bio):
            tree = _gold_np_tree(sentence, span)
            if not validate_tree(tree).proper:
                if on_error == "skip":
                    continue
                text = " ".join(t.form for t in tree.tokens)
                raise ValueError(
                    f"sentence {num}: noun phrase {text!r} is not a proper sub-tree"
                )
            trees.append(tree)
    return trees


def derive_segment_trees(corpus, group_forming=frozenset({"of"}),
                         on_error="raise") -> list[DependencyTree]:
    """Gold training trees for the segment-mode parser (one per
    compressed non-empty segment)."""
    trees = []
    for num, sentence in enumerate(corpus):
        if sentence.bio is None or not sentence.fully_parsed():
            continue
        if sentence.tokens[-1].pos != FINAL_PUNCT_TAG:
            if on_error == "skip":
                continue
            raise ValueError(f"sentence {num}: no final punctuation, cannot segment")
        roles = _role_list(sentence)
        seg_sent = segmenter.segment(sentence.tokens, roles)
        for start, stop in seg_sent.segments:
            if start == stop:
                continue
            _, tree = _gold_segment(sentence, roles, start, stop, group_forming)
            if not validate_tree(tree).proper:
                if on_error == "skip":
                    continue
                text = " ".join(t.form for t in sentence.tokens[start:stop])
                raise ValueError(
                    f"sentence {num}: segment {text!r} does not reduce to a proper tree"
                )
            trees.append(tree)
    return trees


def synthesize_from_gold(sentence: Sentence, group_forming=frozenset({"of"}),
                         trace: list | None = None) -> DependencyTree:
    """Run the synthesis rules with oracle components (gold roles, gold
    chunks, gold sub-trees).  The result should reproduce the gold tree
    whenever the annotation follows the rule conventions."""
    if sentence.bio is None or not sentence.fully_parsed():
        raise ValueError("oracle synthesis needs full annotation")
    roles = _role_list(sentence)
    seg_sent = segmenter.segment(sentence.tokens, roles)
    if len(seg_sent.tokens) != len(sentence.tokens):
        raise ValueError("oracle synthesis needs sentence-final punctuation")
    compressed_parses = []
    extractions = []
    np_parses = []
    for start, stop in seg_sent.segments:
        if start == stop:
            compressed_parses.append(None)
            extractions.append(None)
            np_parses.append(None)
            continue
        extraction, tree = _gold_segment(sentence, roles, start, stop, group_forming)
        parses = {
            pos: [
                _gold_np_tree(
                    sentence,
                    np_chunker.NPSpan(start + span.start, start + span.end),
                )
                for span in group.spans
            ]
            for pos, group in extraction.groups.items()
        }
        compressed_parses.append(tree)
        extractions.append(extraction)
        np_parses.append(parses)
    return synthesizer.synthesize(seg_sent, compressed_parses, extractions,
                                  np_parses, trace=trace)


def whole_sentence_trees(corpus, on_error="raise") -> list[DependencyTree]:
    trees = []
    for num, sentence in enumerate(corpus):
        if not sentence.fully_parsed():
            continue
        tree = sentence.tree()
        if not validate_tree(tree).proper:
            if on_error == "skip":
                continue
            raise ValueError(f"sentence {num}: gold tree is not proper")
        trees.append(tree)
    return trees


def train_bundle(corpus, window_size: int = 8,
                 config: lw_roles.TrainConfig = lw_roles.TrainConfig(),
                 add_k: float = 0.1, with_tagger: bool = True) -> ModelBundle:
    """Train every model from one fully annotated corpus."""
    role_models = lw_roles.train_from_corpus(corpus, window_size, config)
    group_forming = role_models.lexicon.group_forming
    return ModelBundle(
        roles=role_models,
        chunker=np_chunker.train_chunker(corpus, add_k),
        np_model=dep_parser.train_parser(derive_np_trees(corpus), "np", add_k),
        segment_model=dep_parser.train_parser(
            derive_segment_trees(corpus, group_forming), "segment", add_k),
        baseline_model=dep_parser.train_parser(
            whole_sentence_trees(corpus), "segment", add_k),
        tagger=pos_tagger.train_tagger(corpus, add_k) if with_tagger else None,
    )
