"""Acceptance criteria, one test per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS/FAIL
line per criterion.
"""

import random
import time

from clausecut.core import LinkWordRole, Sentence, Token, validate_tree
from clausecut.chunker import bracket, decode_bio, group_nps, extract_nps
from clausecut.evaluation import candidate_counts, error_reduction, evaluate
from clausecut.parser import repair_tree, select_governors
from clausecut.pipeline import (
    normalize_roles,
    parse_baseline,
    run_dc,
    save_bundle,
    load_bundle,
    train_bundle,
)
from clausecut.roles import classify_comma, classify_conjunction, disambiguate
from clausecut.segmenter import segment
from clausecut.tagger import tag
from clausecut import toygen

from conftest import find_sentence
from test_tagger import brute_force as tagger_oracle, random_model as random_tagger
from test_chunker import brute_force_bio as chunker_oracle
from test_parser import oracle_best_governor, random_treebank

R = LinkWordRole


def report(number, description, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"\nACCEPTANCE {number} {status} - {description}{suffix}")
    assert ok, f"criterion {number}: {description}{suffix}"


def test_criterion_1_rule_conformance(toy_corpus):
    started = time.monotonic()
    bundle = train_bundle(toy_corpus)
    failures = []

    def check(name, condition):
        if not condition:
            failures.append(name)

    # Two-clause sentence: segmentation at the clausal "but" and its tree.
    fig = find_sentence(toy_corpus, "He", "likes", "chocolates")
    roles = normalize_roles(fig.tokens, disambiguate(bundle.roles, fig.tokens))
    seg = segment(fig.tokens, roles)
    check("chocolates segmentation", [seg.tokens[i].form for i, _ in seg.linkwords]
          == ["but", "."])
    result = run_dc(fig.tokens, bundle)
    check("chocolates tree", result.tree.governors == tuple(fig.governors))

    # Comma and conjunction gold labels.
    jane = find_sentence(toy_corpus, "When", "Jane")
    check("prosodic comma", classify_comma(bundle.roles.comma, jane.tokens, 5)
          is R.PROSODIC_COMMA)
    check("conjunctive comma", classify_comma(bundle.roles.comma, jane.tokens, 10)
          is R.LOGICAL_CONJUNCTIVE_COMMA)
    check("list comma", classify_comma(bundle.roles.comma, fig.tokens, 3)
          is R.LOGICAL_CONJUNCTIVE_COMMA)
    logical = find_sentence(toy_corpus, "I", "like", "ice-cream", ",", "hot-dogs")
    check("logical but", classify_conjunction(bundle.roles.conjunction,
                                              logical.tokens, 5)
          is R.LOGICAL_CONJUNCTION)
    clausal = find_sentence(toy_corpus, "I", "like", "ice-cream", ",", "crave")
    check("clausal but", classify_conjunction(bundle.roles.conjunction,
                                              clausal.tokens, 7)
          is R.CLAUSAL_CONJUNCTION)
    check("chocolates but", classify_conjunction(bundle.roles.conjunction,
                                             fig.tokens, 7)
          is R.CLAUSAL_CONJUNCTION)

    # Three compressions to "NN VBZ NN ." using the trained chunker.
    compressions = [
        toks_with_roles(
            [("He", "PRP"), ("likes", "VBZ"), ("chocolates", "NNS"), (",", ","),
             ("candies", "NNS"), ("and", "CC"), ("cakes", "NNS"), (".", ".")]),
        toks_with_roles(
            [("The", "DT"), ("cat", "NN"), ("likes", "VBZ"), ("fish", "NN"),
             (".", ".")]),
        toks_with_roles(
            [("The", "DT"), ("President", "NNP"), ("of", "IN"), ("the", "DT"),
             ("United", "NNP"), ("States", "NNPS"), ("of", "IN"),
             ("America", "NNP"), ("meets", "VBZ"), ("the", "DT"),
             ("Queen", "NNP"), ("of", "IN"), ("England", "NNP"), (".", ".")]),
    ]
    for tokens in compressions:
        roles = normalize_roles(tokens, disambiguate(bundle.roles, tokens))
        body = tokens[:-1]
        spans = bracket(bundle.chunker, body)
        groups = group_nps(body, spans, roles[:-1],
                           bundle.roles.lexicon.group_forming)
        extraction = extract_nps(body, groups)
        pos = [t.pos for t in extraction.compressed] + ["."]
        check(f"compression {' '.join(t.form for t in tokens[:3])}",
              pos == ["NN", "VBZ", "NN", "."])

    # "that" under a verb and under an adjective.
    know = find_sentence(toy_corpus, "I", "know", "that")
    tree = run_dc(know.tokens, bundle).tree
    check("that under know", tree.governors[2] == 1)
    check("is under that", tree.governors[4] == 2)
    glad = find_sentence(toy_corpus, "I", "am", "glad", "that")
    tree = run_dc(glad.tokens, bundle).tree
    check("that under glad", tree.governors[3] == 2)

    # Prosodic comma, clausal conjunction, and head segment rules on the
    # software-manual sentence, including its segmentation.
    manual = find_sentence(toy_corpus, "If", "the", "Workbench")
    roles = normalize_roles(manual.tokens, disambiguate(bundle.roles, manual.tokens))
    seg = segment(manual.tokens, roles)
    check("manual segmentation", [seg.tokens[i].form for i, _ in seg.linkwords]
          == ["If", ",", "and", "."])
    check("manual segment count",
          sum(1 for i in range(len(seg.segments)) if seg.segment_length(i)) == 3)
    result = run_dc(manual.tokens, bundle)
    check("comma leaf on match", result.tree.governors[8] == 7)
    check("and links display", result.tree.governors[24] == 11)
    check("presented under and", result.tree.governors[28] == 24)
    check("if under display", result.tree.governors[0] == 11)
    check("display is head verb", result.tree.governors[11] == 35)
    check("manual proper", result.report.proper)

    elapsed = time.monotonic() - started
    ok = not failures and elapsed < 5.0
    report(1, "rule-conformance fixtures", ok,
           f"failed={failures or 'none'}, {elapsed:.2f}s")


def toks_with_roles(pairs):
    return tuple(Token(i, f, p) for i, (f, p) in enumerate(pairs))


def test_criterion_2_oracle_equivalence():
    started = time.monotonic()
    mismatches = 0
    cases = 0

    rng = random.Random(1001)
    for case in range(1000):
        model = random_tagger(rng, rng.randint(2, 5), rng.randint(2, 6))
        n = rng.randint(1, 5)
        words = [rng.choice(model.vocab) if rng.random() < 0.9 else f"u{case}"
                 for _ in range(n)]
        cases += 1
        if tag(model, words) != tagger_oracle(model, words):
            mismatches += 1

    rng = random.Random(1002)
    from test_chunker import sent as chunker_sent
    tags = ["DT", "NN", "NNS", "JJ", "VBZ", ",", "CC", "IN"]
    for _ in range(1000):
        corpus = []
        for _ in range(rng.randint(1, 3)):
            n = rng.randint(1, 6)
            bio = []
            for i in range(n):
                prev = bio[-1] if bio else "O"
                choices = ["B-NP", "O"] + (["I-NP"] if prev != "O" else [])
                bio.append(rng.choice(choices))
            corpus.append(chunker_sent(
                [("w", rng.choice(tags)) for _ in range(n)], bio))
        model = train_chunker_quiet(corpus, rng.choice([0.05, 0.1, 0.5]))
        tokens = toks_with_roles([("w", rng.choice(tags))
                                  for _ in range(rng.randint(1, 5))])
        cases += 1
        if decode_bio(model, tokens) != chunker_oracle(model, tokens):
            mismatches += 1

    rng = random.Random(1003)
    parser_tags = ["NN", "VBZ", "DT", "JJ", "IN", "."]
    for _ in range(1000):
        model = random_treebank(rng)
        tokens = toks_with_roles([(f"w{i}", rng.choice(parser_tags))
                                  for i in range(rng.randint(1, 6))])
        parsed = select_governors(model, tokens)
        cases += 1
        if any(parsed.governors[i] != oracle_best_governor(model, tokens, i)
               for i in range(len(tokens))):
            mismatches += 1

    elapsed = time.monotonic() - started
    ok = mismatches == 0 and cases == 3000 and elapsed < 60.0
    report(2, "Viterbi/greedy selection match brute-force oracles", ok,
           f"{cases} cases, {mismatches} mismatches, {elapsed:.1f}s")


def train_chunker_quiet(corpus, add_k):
    from clausecut.chunker import train_chunker
    return train_chunker(corpus, add_k)


def test_criterion_3_perplexity_reduction(toy_corpus, bundle):
    failures = []
    multi_seen = 0
    for s in toy_corpus:
        seg = segment(s.tokens, s.roles)
        non_empty = sum(1 for i in range(len(seg.segments))
                        if seg.segment_length(i))
        if non_empty < 2:
            continue
        multi_seen += 1
        for counts in candidate_counts(s):
            if counts is not None and not counts[1] < counts[0]:
                failures.append(" ".join(t.form for t in s.tokens)[:40])
                break

    oranges_sentence = find_sentence(toy_corpus, "He", "likes", "oranges")
    roles = normalize_roles(oranges_sentence.tokens,
                            disambiguate(bundle.roles, oranges_sentence.tokens))
    annotated = Sentence(oranges_sentence.tokens, oranges_sentence.governors,
                         roles, oranges_sentence.bio)
    oranges = candidate_counts(annotated)[2]
    ok = not failures and multi_seen >= 10 and oranges == (5, 2)
    report(3, "segment candidates shrink; oranges sees 5 -> 2", ok,
           f"multi-segment sentences={multi_seen}, oranges={oranges}")


def test_criterion_4_tree_validity(toy_corpus, bundle):
    failures = []
    for s in toy_corpus:
        if not run_dc(s.tokens, bundle, repair=True).report.proper:
            failures.append("toy dc " + s.tokens[0].form)

    rng = random.Random(4040)
    tags = ["NN", "NNS", "VBZ", "VBD", "DT", "JJ", ",", "CC", "IN", "PRP",
            "RB", "MD", "VB", "VBG", "VBN", "."]
    forms = {"IN": ["of", "if", "in", "that", "while", "with"],
             "CC": ["and", "but", "or"], ",": [","], ".": ["."]}
    defective_flagged = 0
    for _ in range(10000):
        n = rng.randint(1, 10)
        tokens = []
        for i in range(n):
            t = rng.choice(tags)
            tokens.append(Token(i, rng.choice(forms.get(t, [f"w{rng.randint(0, 50)}"])), t))
        result = run_dc(tokens, bundle, repair=False)
        if result.report != validate_tree(result.tree):
            failures.append("flag mismatch")
            break
        if not result.report.proper:
            defective_flagged += 1
            repaired = repair_tree(result.tree, bundle.segment_model)
            if not validate_tree(repaired).proper:
                failures.append("dc repair failed")
                break
        base = parse_baseline(tokens, bundle, repair=False)
        if not validate_tree(base).proper:
            defective_flagged += 1
            fixed = parse_baseline(tokens, bundle, repair=True)
            if not validate_tree(fixed).proper:
                failures.append("baseline repair failed")
                break
    ok = not failures
    report(4, "repair yields proper trees; defects are always flagged", ok,
           f"defective-and-flagged={defective_flagged}, failures={failures or 'none'}")


def test_criterion_5_comparative(toy_corpus):
    train = toygen.generate_conjoined(100, seed=11)
    test_set = toygen.generate_conjoined(200, seed=12)
    bundle = train_bundle(list(toy_corpus) + train)
    dc_preds = []
    base_preds = []
    for s in test_set:
        result = run_dc(s.tokens, bundle)
        dc_preds.append(Sentence(s.tokens, tuple(result.tree.governors),
                                 result.roles, result.bio))
        base = parse_baseline(s.tokens, bundle)
        base_preds.append(Sentence(s.tokens, tuple(base.governors),
                                   tuple([None] * len(s.tokens)), None))
    dc_acc = evaluate(test_set, dc_preds).governor_accuracy
    base_acc = evaluate(test_set, base_preds).governor_accuracy
    formula = error_reduction(0.811, 0.851)
    ok = dc_acc >= base_acc and abs(formula - 0.212) <= 0.001
    report(5, "divide-and-conquer >= baseline; error-reduction formula", ok,
           f"dc={dc_acc:.3f}, baseline={base_acc:.3f}, formula={formula:.4f}")


def test_criterion_6_determinism_and_persistence(toy_corpus, bundle, tmp_path):
    save_bundle(bundle, tmp_path / "m")
    loaded = load_bundle(tmp_path / "m")
    failures = []
    for s in toy_corpus:
        direct = run_dc(s.tokens, bundle)
        reloaded = run_dc(s.tokens, loaded)
        if direct.tree.governors != reloaded.tree.governors:
            failures.append("dc parse differs")
            break
        if direct.roles != reloaded.roles or direct.bio != reloaded.bio:
            failures.append("roles or chunks differ")
            break
        if parse_baseline(s.tokens, bundle).governors != \
                parse_baseline(s.tokens, loaded).governors:
            failures.append("baseline parse differs")
            break
        words = [t.form for t in s.tokens]
        if tag(bundle.tagger, words) != tag(loaded.tagger, words):
            failures.append("tagging differs")
            break
    ok = not failures
    report(6, "train-save-load-parse is bit-identical to train-parse", ok,
           f"failures={failures or 'none'}")
