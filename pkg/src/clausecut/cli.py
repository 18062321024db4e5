"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from . import __version__, toy_corpus_path
from .core import (
    CorpusFormatError,
    Sentence,
    read_corpus,
    format_sentence,
    validate_tree,
    write_corpus,
)
from . import chunker as np_chunker
from . import parser as dep_parser
from . import pipeline as pl
from . import roles as lw_roles
from . import segmenter
from . import tagger as pos_tagger
from .evaluation import (
    candidate_reduction_stats_with_models,
    error_reduction,
    evaluate,
)


def _build_argparser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="clausecut",
        description="Divide-and-conquer dependency parsing toolkit",
    )
    top.add_argument("--version", action="version", version=f"clausecut {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train-tagger", help="train the bigram HMM tagger")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--add-k", type=float, default=0.1)

    p = sub.add_parser("train-roles", help="train the link-word classifiers")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--window", type=int, default=8)
    p.add_argument("--epochs", type=int, default=300)
    p.add_argument("--learning-rate", type=float, default=0.5)
    p.add_argument("--hidden", type=int, default=16)
    p.add_argument("--seed", type=int, default=13)

    p = sub.add_parser("train-chunker", help="train the BIO noun phrase chunker")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--add-k", type=float, default=0.1)

    p = sub.add_parser("train-parser", help="train a governor-selection parser")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--mode", choices=("segment", "np"), required=True)
    p.add_argument(
        "--from-sentences", action="store_true",
        help="train on whole sentences instead of derived segments "
             "(the baseline model; only with --mode segment)",
    )
    p.add_argument("--add-k", type=float, default=0.1)

    p = sub.add_parser("train-bundle", help="train every model into a directory")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--window", type=int, default=8)
    p.add_argument("--epochs", type=int, default=300)
    p.add_argument("--seed", type=int, default=13)
    p.add_argument(
        "--holdout", type=int, default=0,
        help="keep every k-th sentence out of training and write the "
             "held-out test corpus next to the models as holdout.corpus",
    )

    p = sub.add_parser("parse", help="parse sentences")
    p.add_argument("--models", required=True, help="model bundle directory")
    p.add_argument("--input", help="corpus file (pre-tagged)")
    p.add_argument("--text", help="raw sentence (simple word/punctuation "
                   "tokenization, needs a tagger)")
    p.add_argument("--strategy", choices=("dc", "baseline"), default="dc")
    p.add_argument("--repair", choices=("on", "off"), default="off")
    p.add_argument("--trace", action="store_true", help="print rule firings to stderr")
    p.add_argument("--out", help="write the parsed corpus here instead of stdout")

    p = sub.add_parser("segment", help="show segmentation of each sentence")
    p.add_argument("--models", required=True)
    p.add_argument("--input", required=True)

    p = sub.add_parser("bracket", help="show noun phrase brackets")
    p.add_argument("--models", required=True)
    p.add_argument("--input", required=True)

    p = sub.add_parser("evaluate", help="compare a prediction against gold")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument(
        "--compare-pred",
        help="second prediction; reports the error reduction moving from "
             "this one's governor accuracy to --pred's",
    )

    p = sub.add_parser("stats-candidates", help="candidate-governor reduction report")
    p.add_argument("--models", required=True)
    p.add_argument("--input", required=True)

    p = sub.add_parser("toy-corpus", help="print the path of the bundled corpus")
    return top


def _read(path):
    try:
        return read_corpus(path)
    except FileNotFoundError:
        raise CorpusFormatError(f"no such file: {path}")


def _tokenize(text: str) -> list[str]:
    """Whitespace plus punctuation splitting; hyphens and apostrophes
    stay inside words."""
    return re.findall(r"\w+(?:[-']\w+)*|[^\w\s]", text)


def _predicted_sentence(tokens, tree, roles=None, bio=None) -> Sentence:
    return Sentence(
        tuple(tokens),
        tuple(tree.governors),
        tuple(roles) if roles is not None else tuple([None] * len(tokens)),
        tuple(bio) if bio is not None else None,
    )


def _cmd_parse(args, out) -> int:
    bundle = pl.load_bundle(args.models)
    repair = args.repair == "on"
    if (args.input is None) == (args.text is None):
        raise CorpusFormatError("parse needs exactly one of --input or --text")
    if args.text is not None:
        inputs = [_tokenize(args.text)]
    else:
        inputs = _read(args.input)

    blocks = []
    for num, item in enumerate(inputs):
        if args.strategy == "dc":
            result = pl.run_dc(item, bundle, repair=repair, want_trace=args.trace)
            tree, report = result.tree, result.report
            roles, bio = result.roles, result.bio
            if result.synthetic_final:
                roles = roles[:len(tree.tokens)]
                bio = bio[:len(tree.tokens)]
            for line in result.trace:
                print(f"TRACE [{num}] {line}", file=sys.stderr)
        else:
            tree = pl.parse_baseline(item, bundle, repair=repair)
            report = validate_tree(tree)
            roles, bio = None, None
        lines = []
        if not report.proper:
            cycles = ";".join(
                "{" + ",".join(map(str, c)) + "}" for c in report.cycle_list
            )
            lines.append(
                "# defective: roots=%d cycles=%s connected=%s"
                % (report.root_count, cycles or "none", report.connected)
            )
        lines.append(format_sentence(_predicted_sentence(tree.tokens, tree, roles, bio)))
        blocks.append("\n".join(lines))
    text = "\n\n".join(blocks) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        out.write(text)
    return 0


def _cmd_segment(args, out) -> int:
    bundle = pl.load_bundle(args.models)
    for num, sentence in enumerate(_read(args.input)):
        roles = lw_roles.disambiguate(bundle.roles, sentence.tokens)
        roles = pl.normalize_roles(sentence.tokens, roles)
        seg_sent = segmenter.segment(sentence.tokens, roles)
        if num:
            out.write("\n")
        out.write(f"# sentence {num}\n")
        out.write(segmenter.format_segmentation(seg_sent) + "\n")
    return 0


def _cmd_bracket(args, out) -> int:
    bundle = pl.load_bundle(args.models)
    for sentence in _read(args.input):
        spans = np_chunker.bracket(bundle.chunker, sentence.tokens)
        out.write(np_chunker.format_brackets(sentence.tokens, spans) + "\n")
    return 0


def _cmd_evaluate(args, out) -> int:
    gold = _read(args.gold)
    report = evaluate(gold, _read(args.pred))
    for line in report.lines():
        out.write(line + "\n")
    extra = ""
    if args.compare_pred:
        other = evaluate(gold, _read(args.compare_pred))
        reduction = error_reduction(other.governor_accuracy, report.governor_accuracy)
        out.write("%-28s %.4f\n" % ("reference accuracy", other.governor_accuracy))
        out.write("%-28s %.4f\n" % ("error reduction", reduction))
        extra = "\nreference_accuracy=%r\nerror_reduction=%r" % (
            other.governor_accuracy, reduction)
    out.write("\n")
    out.write(report.machine_block() + extra + "\n")
    return 0


def _cmd_stats(args, out) -> int:
    bundle = pl.load_bundle(args.models)
    (before, after), rows = candidate_reduction_stats_with_models(
        _read(args.input), bundle, per_word=True)
    for num, idx, b, a in rows:
        out.write(f"sentence {num} token {idx}: {b} -> {a}\n")
    out.write("mean_candidates_before=%s\n" % repr(before))
    out.write("mean_candidates_after=%s\n" % repr(after))
    return 0


def run(argv, out) -> int:
    parser = _build_argparser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1

    try:
        if args.command == "train-tagger":
            model = pos_tagger.train_tagger(_read(args.corpus), args.add_k)
            pos_tagger.save_tagger(model, args.out)
        elif args.command == "train-roles":
            config = lw_roles.TrainConfig(args.learning_rate, args.epochs,
                                          args.hidden, args.seed)
            models = lw_roles.train_from_corpus(_read(args.corpus), args.window, config)
            lw_roles.save_role_models(models, args.out)
        elif args.command == "train-chunker":
            model = np_chunker.train_chunker(_read(args.corpus), args.add_k)
            np_chunker.save_chunker(model, args.out)
        elif args.command == "train-parser":
            corpus = _read(args.corpus)
            if args.mode == "np":
                trees = pl.derive_np_trees(corpus)
            elif args.from_sentences:
                trees = pl.whole_sentence_trees(corpus)
            else:
                trees = pl.derive_segment_trees(corpus)
            model = dep_parser.train_parser(trees, args.mode, args.add_k)
            dep_parser.save_parser(model, args.out)
        elif args.command == "train-bundle":
            config = lw_roles.TrainConfig(epochs=args.epochs, seed=args.seed)
            corpus = _read(args.corpus)
            if args.holdout > 1:
                held = corpus[::args.holdout]
                corpus = [s for i, s in enumerate(corpus) if i % args.holdout]
                bundle = pl.train_bundle(corpus, args.window, config)
                pl.save_bundle(bundle, args.out)
                write_corpus(held, os.path.join(args.out, "holdout.corpus"))
            else:
                bundle = pl.train_bundle(corpus, args.window, config)
                pl.save_bundle(bundle, args.out)
        elif args.command == "parse":
            return _cmd_parse(args, out)
        elif args.command == "segment":
            return _cmd_segment(args, out)
        elif args.command == "bracket":
            return _cmd_bracket(args, out)
        elif args.command == "evaluate":
            return _cmd_evaluate(args, out)
        elif args.command == "stats-candidates":
            return _cmd_stats(args, out)
        elif args.command == "toy-corpus":
            out.write(toy_corpus_path() + "\n")
        return 0
    except (CorpusFormatError, pl.PipelineError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:], sys.stdout))


if __name__ == "__main__":
    main()
