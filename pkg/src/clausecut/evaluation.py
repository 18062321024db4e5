"""Side-by-side evaluation: word-level governor accuracy, POS accuracy,
link-word role accuracies, exact-match NP bracketing, and the
candidate-governor reduction statistic."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    COMMA_TAG,
    CONJUNCTION_TAG,
    LinkWordRole,
    Sentence,
)
from . import chunker as np_chunker
from . import segmenter


def error_reduction(old: float, new: float) -> float:
    """Relative error reduction when accuracy moves from old to new."""
    if old >= 1.0:
        raise ValueError("old accuracy is already perfect")
    return (new - old) / (1.0 - old)


@dataclass(frozen=True)
class EvalReport:
    governor_accuracy: float
    pos_accuracy: float
    comma_accuracy: float | None
    conjunction_accuracy: float | None
    np_exact_match: float | None
    mean_candidates_before: float | None
    mean_candidates_after: float | None
    token_count: int
    sentence_count: int
    governor_correct: int
    errors: tuple  # (sentence index, tuple of mismatched token indices)

    def lines(self) -> list[str]:
        def fmt(name, value):
            return "%-28s %s" % (name, "n/a" if value is None else "%.4f" % value)

        out = [
            fmt("governor accuracy", self.governor_accuracy),
            fmt("pos accuracy", self.pos_accuracy),
            fmt("comma role accuracy", self.comma_accuracy),
            fmt("conjunction role accuracy", self.conjunction_accuracy),
            fmt("np exact-match rate", self.np_exact_match),
            fmt("mean candidates (sentence)", self.mean_candidates_before),
            fmt("mean candidates (segment)", self.mean_candidates_after),
            "%-28s %d" % ("tokens", self.token_count),
            "%-28s %d" % ("sentences", self.sentence_count),
        ]
        return out

    def machine_block(self) -> str:
        pairs = [
            ("governor_accuracy", self.governor_accuracy),
            ("pos_accuracy", self.pos_accuracy),
            ("comma_accuracy", self.comma_accuracy),
            ("conjunction_accuracy", self.conjunction_accuracy),
            ("np_exact_match", self.np_exact_match),
            ("mean_candidates_before", self.mean_candidates_before),
            ("mean_candidates_after", self.mean_candidates_after),
            ("tokens", self.token_count),
            ("sentences", self.sentence_count),
        ]
        return "\n".join(
            "%s=%s" % (k, "nan" if v is None else repr(v) if isinstance(v, float) else v)
            for k, v in pairs
        )


def _aligned(gold: Sentence, pred: Sentence, num: int) -> None:
    if len(gold.tokens) != len(pred.tokens):
        raise ValueError(
            f"sentence {num}: gold has {len(gold.tokens)} tokens, "
            f"prediction has {len(pred.tokens)}"
        )
    for g, p in zip(gold.tokens, pred.tokens):
        if g.form != p.form:
            raise ValueError(
                f"sentence {num}: token {g.index} differs ({g.form!r} vs {p.form!r})"
            )


def candidate_counts(sentence: Sentence) -> list[tuple[int, int] | None]:
    """(whole-sentence, within-segment) word-candidate counts for every
    segment-interior word; None for tokens serving as link words.

    The whole-sentence count excludes the tokens that act as link words
    after segmentation, matching how the reduction is usually quoted."""
    roles = tuple(
        r if r is not None else LinkWordRole.NOT_LINK_WORD for r in sentence.roles
    )
    seg_sent = segmenter.segment(sentence.tokens, roles)
    n_link = len(seg_sent.linkwords)
    synthetic = len(seg_sent.tokens) > len(sentence.tokens)
    word_total = len(sentence.tokens) - (n_link - 1 if synthetic else n_link)
    out: list[tuple[int, int] | None] = [None] * len(sentence.tokens)
    for start, stop in seg_sent.segments:
        width = stop - start
        for i in range(start, stop):
            out[i] = (word_total - 1, width - 1)
    return out


def candidate_reduction_stats(corpus, per_word=False):
    """Mean word-candidate counts before and after segmentation over a
    role-annotated corpus."""
    rows = []
    before_sum = after_sum = n = 0
    for num, sentence in enumerate(corpus):
        for i, counts in enumerate(candidate_counts(sentence)):
            if counts is None:
                continue
            before, after = counts
            before_sum += before
            after_sum += after
            n += 1
            if per_word:
                rows.append((num, i, before, after))
    means = (
        before_sum / n if n else 0.0,
        after_sum / n if n else 0.0,
    )
    return (means, rows) if per_word else means


def candidate_reduction_stats_with_models(corpus, bundle, per_word=False):
    """candidate_reduction_stats over roles assigned by trained models
    instead of gold annotation."""
    from . import pipeline as pl
    from . import roles as lw_roles

    annotated = []
    for sentence in corpus:
        roles = pl.normalize_roles(
            sentence.tokens, lw_roles.disambiguate(bundle.roles, sentence.tokens)
        )
        annotated.append(
            Sentence(sentence.tokens, sentence.governors, roles, sentence.bio)
        )
    return candidate_reduction_stats(annotated, per_word)


def evaluate(gold_corpus, pred_corpus) -> EvalReport:
    """Token-aligned comparison of two corpora."""
    if len(gold_corpus) != len(pred_corpus):
        raise ValueError(
            f"gold has {len(gold_corpus)} sentences, prediction has {len(pred_corpus)}"
        )
    gov_total = gov_correct = 0
    pos_total = pos_correct = 0
    comma_total = comma_correct = 0
    conj_total = conj_correct = 0
    np_gold = np_matched = 0
    has_bio = True
    before_sum = after_sum = cand_n = 0
    errors = []

    for num, (gold, pred) in enumerate(zip(gold_corpus, pred_corpus)):
        _aligned(gold, pred, num)
        mistakes = []
        for i in range(len(gold.tokens)):
            if gold.governors[i] is not None:
                gov_total += 1
                if pred.governors[i] == gold.governors[i]:
                    gov_correct += 1
                else:
                    mistakes.append(i)
            pos_total += 1
            if pred.tokens[i].pos == gold.tokens[i].pos:
                pos_correct += 1
            role = gold.roles[i]
            if role is not None and gold.tokens[i].pos == COMMA_TAG:
                comma_total += 1
                if pred.roles[i] == role:
                    comma_correct += 1
            if role is not None and gold.tokens[i].pos == CONJUNCTION_TAG:
                conj_total += 1
                if pred.roles[i] == role:
                    conj_correct += 1
        if mistakes:
            errors.append((num, tuple(mistakes)))

        if gold.bio is None or pred.bio is None:
            has_bio = False
        else:
            gold_spans = {
                (s.start, s.end) for s in np_chunker.spans_from_bio(gold.bio)
            }
            pred_spans = {
                (s.start, s.end) for s in np_chunker.spans_from_bio(pred.bio)
            }
            np_gold += len(gold_spans)
            np_matched += len(gold_spans & pred_spans)

        for counts in candidate_counts(pred):
            if counts is None:
                continue
            before_sum += counts[0]
            after_sum += counts[1]
            cand_n += 1

    if has_bio:
        np_rate = np_matched / np_gold if np_gold else 1.0
    else:
        np_rate = None
    return EvalReport(
        governor_accuracy=gov_correct / gov_total if gov_total else 1.0,
        pos_accuracy=pos_correct / pos_total if pos_total else 1.0,
        comma_accuracy=comma_correct / comma_total if comma_total else None,
        conjunction_accuracy=conj_correct / conj_total if conj_total else None,
        np_exact_match=np_rate,
        mean_candidates_before=before_sum / cand_n if cand_n else None,
        mean_candidates_after=after_sum / cand_n if cand_n else None,
        token_count=pos_total,
        sentence_count=len(gold_corpus),
        governor_correct=gov_correct,
        errors=tuple(errors),
    )
