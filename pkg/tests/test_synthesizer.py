import pytest

from clausecut.core import ROOT, DependencyTree, LinkWordRole, Token, validate_tree
from clausecut.chunker import NPGroup, NPSpan
from clausecut.pipeline import synthesize_from_gold
from clausecut.segmenter import segment
from clausecut.synthesizer import (
    SynthesisError,
    VerbDescriptor,
    attach_clausal_conjunction,
    attach_prosodic_comma,
    attach_subordinating_preposition,
    chain_remaining_segments,
    find_head_segment,
    head_segment_target,
    make_segment_parse,
    reattach_np,
    verbs_agree,
)
from conftest import find_sentence

R = LinkWordRole


def toks(*pairs):
    return [Token(i, f, p) for i, (f, p) in enumerate(pairs)]


def seg_and_parses(pairs, roles, local_governors):
    """Build a SegmentedSentence plus one SegmentParse per segment from
    segment-local governor lists (None entry for empty segments)."""
    tokens = toks(*pairs)
    seg_sent = segment(tokens, roles)
    parses = []
    for (start, stop), governors in zip(seg_sent.segments, local_governors):
        if governors is None:
            parses.append(make_segment_parse((start, stop), None))
        else:
            local = tuple(
                Token(k, t.form, t.pos)
                for k, t in enumerate(seg_sent.tokens[start:stop])
            )
            parses.append(make_segment_parse(
                (start, stop), DependencyTree(local, tuple(governors))
            ))
    return seg_sent, parses


def test_verb_descriptor_classes():
    assert VerbDescriptor.of(Token(0, "walks", "VBZ")).tense == "present"
    assert VerbDescriptor.of(Token(0, "walked", "VBD")).tense == "past"
    assert VerbDescriptor.of(Token(0, "walking", "VBG")).tense == "participle"
    assert VerbDescriptor.of(Token(0, "walked", "VBN")).tense == "participle"
    assert VerbDescriptor.of(Token(0, "walk", "VB")).tense == "present"
    assert VerbDescriptor.of(Token(0, "will", "MD")).morph == "MD"
    with pytest.raises(ValueError):
        VerbDescriptor.of(Token(0, "dog", "NN"))


def test_verbs_agree_morph_or_tense():
    assert verbs_agree(Token(0, "a", "VBZ"), Token(1, "b", "VBZ"))   # same morph
    assert verbs_agree(Token(0, "a", "VBZ"), Token(1, "b", "VBP"))   # same tense
    assert verbs_agree(Token(0, "a", "VBN"), Token(1, "b", "VBG"))   # participles
    assert not verbs_agree(Token(0, "a", "VBD"), Token(1, "b", "VBZ"))
    assert not verbs_agree(Token(0, "a", "VB"), Token(1, "b", "VBN"))


# --- reattach_np ----------------------------------------------------------

def chained_group_fixture():
    """Compressed "NP#0 likes NP#1 ." for "He likes chocolates , candies
    and cakes ." with the second placeholder holding a three-NP group."""
    original = toks(
        ("He", "PRP"), ("likes", "VBZ"), ("chocolates", "NNS"), (",", ","),
        ("candies", "NNS"), ("and", "CC"), ("cakes", "NNS"),
    )
    compressed = DependencyTree(
        tuple(toks(("NP#0", "NN"), ("likes", "VBZ"), ("NP#1", "NN"))),
        (1, ROOT, 1),
    )
    group = NPGroup((NPSpan(2, 2), NPSpan(4, 4), NPSpan(6, 6)), (3, 5))
    span_parses = [
        DependencyTree((Token(0, "chocolates", "NNS"),), (ROOT,)),
        DependencyTree((Token(0, "candies", "NNS"),), (ROOT,)),
        DependencyTree((Token(0, "cakes", "NNS"),), (ROOT,)),
    ]
    return original, compressed, group, span_parses


def test_reattach_np_chains_group():
    original, compressed, group, span_parses = chained_group_fixture()
    expanded = reattach_np(compressed, 2, group, span_parses, original)
    forms = [t.form for t in expanded.tokens]
    assert forms == ["NP#0", "likes", "chocolates", ",", "candies", "and", "cakes"]
    governors = dict(zip(forms, expanded.governors))
    assert governors["chocolates"] == 1          # head takes placeholder's arc
    assert governors["candies"] == forms.index("chocolates")
    assert governors["cakes"] == forms.index("candies")
    assert governors[","] == forms.index("chocolates")
    assert governors["and"] == forms.index("candies")


def test_reattach_np_root_governed_placeholder():
    original = toks(("the", "DT"), ("cat", "NN"))
    compressed = DependencyTree(tuple(toks(("NP#0", "NN"),)), (ROOT,))
    group = NPGroup((NPSpan(0, 1),), ())
    parse = DependencyTree(tuple(toks(("the", "DT"), ("cat", "NN"))), (1, ROOT))
    expanded = reattach_np(compressed, 0, group, [parse], original)
    assert expanded.governors == (1, ROOT)


def test_reattach_np_singleton_substitution():
    original = toks(("He", "PRP"), ("sleeps", "VBZ"))
    compressed = DependencyTree(
        tuple(toks(("NP#0", "NN"), ("sleeps", "VBZ"))), (1, ROOT)
    )
    group = NPGroup((NPSpan(0, 0),), ())
    parse = DependencyTree((Token(0, "He", "PRP"),), (ROOT,))
    expanded = reattach_np(compressed, 0, group, [parse], original)
    assert [t.form for t in expanded.tokens] == ["He", "sleeps"]
    assert expanded.governors == (1, ROOT)


def test_reattach_np_placeholder_out_of_range():
    original, compressed, group, span_parses = chained_group_fixture()
    with pytest.raises(SynthesisError, match="placeholder"):
        reattach_np(compressed, 9, group, span_parses, original)


def test_reattach_np_redirects_arcs_into_placeholder():
    # a token that depended on the placeholder must depend on the group
    # head afterwards
    original = toks(("dogs", "NNS"), ("and", "CC"), ("cats", "NNS"),
                    ("sleep", "VBP"))
    compressed = DependencyTree(
        tuple(toks(("NP#0", "NN"), ("sleep", "VBP"))), (1, ROOT)
    )
    # make the verb depend on the placeholder to exercise redirection
    compressed = DependencyTree(compressed.tokens, (ROOT, 0))
    group = NPGroup((NPSpan(0, 0), NPSpan(2, 2)), (1,))
    parses = [
        DependencyTree((Token(0, "dogs", "NNS"),), (ROOT,)),
        DependencyTree((Token(0, "cats", "NNS"),), (ROOT,)),
    ]
    expanded = reattach_np(compressed, 0, group, parses, original)
    forms = [t.form for t in expanded.tokens]
    assert forms == ["dogs", "and", "cats", "sleep"]
    assert expanded.governors[forms.index("sleep")] == 0
    assert expanded.governors[0] == ROOT


# --- link word rules ------------------------------------------------------

def prosodic_fixture():
    pairs = [("At", "IN"), ("noon", "NN"), (",", ","), ("she", "PRP"),
             ("reads", "VBZ"), (".", ".")]
    roles = [R.NON_SEGMENTING_PREPOSITION, R.NOT_LINK_WORD, R.PROSODIC_COMMA,
             R.NOT_LINK_WORD, R.NOT_LINK_WORD, R.NOT_LINK_WORD]
    return seg_and_parses(pairs, roles, [(1, ROOT), (1, ROOT)])


def test_prosodic_comma_hangs_on_previous_word():
    seg_sent, parses = prosodic_fixture()
    att = attach_prosodic_comma(seg_sent, 0)
    assert att.governor == 1      # "noon", last word of the segment
    assert att.dependent is None


def test_prosodic_comma_requires_non_empty_segment():
    pairs = [(",", ","), ("she", "PRP"), ("reads", "VBZ"), (".", ".")]
    roles = [R.PROSODIC_COMMA] + [R.NOT_LINK_WORD] * 3
    seg_sent, parses = seg_and_parses(pairs, roles, [None, (1, ROOT)])
    with pytest.raises(SynthesisError, match="empty segment"):
        attach_prosodic_comma(seg_sent, 0)


def test_rules_reject_wrong_roles():
    seg_sent, parses = prosodic_fixture()
    with pytest.raises(ValueError, match="not clausal"):
        attach_clausal_conjunction(seg_sent, 0, parses)
    clausal_sent, clausal_parses = two_clause_fixture()
    with pytest.raises(ValueError, match="not a prosodic comma"):
        attach_prosodic_comma(clausal_sent, 0)
    with pytest.raises(ValueError, match="not a subordinating preposition"):
        attach_subordinating_preposition(
            clausal_sent, 0, clausal_parses, [None] * len(clausal_sent.tokens)
        )


def two_clause_fixture():
    pairs = [("He", "PRP"), ("likes", "VBZ"), ("chocolates", "NNS"),
             ("but", "CC"), ("she", "PRP"), ("likes", "VBZ"),
             ("prunes", "NNS"), (".", ".")]
    roles = [R.NOT_LINK_WORD] * 3 + [R.CLAUSAL_CONJUNCTION] + [R.NOT_LINK_WORD] * 4
    return seg_and_parses(pairs, roles, [(1, ROOT, 1), (1, ROOT, 1)])


def test_clausal_conjunction_links_head_verbs():
    seg_sent, parses = two_clause_fixture()
    att = attach_clausal_conjunction(seg_sent, 0, parses)
    assert att.governor == 1      # left "likes"
    assert att.dependent == 5     # right "likes"


def test_clausal_conjunction_sentence_initial():
    pairs = [("But", "CC"), ("she", "PRP"), ("stayed", "VBD"), (".", ".")]
    roles = [R.CLAUSAL_CONJUNCTION] + [R.NOT_LINK_WORD] * 3
    seg_sent, parses = seg_and_parses(pairs, roles, [None, (1, ROOT)])
    att = attach_clausal_conjunction(seg_sent, 0, parses)
    assert att.governor == 2      # leftmost verb to the right
    assert att.dependent is None


def test_clausal_conjunction_tense_mismatch_falls_back():
    # left head VBD, right head VBZ, no other segments: governor is the
    # rightmost verb of the left segment
    pairs = [("He", "PRP"), ("slept", "VBD"), ("and", "CC"),
             ("she", "PRP"), ("runs", "VBZ"), (".", ".")]
    roles = [R.NOT_LINK_WORD] * 2 + [R.CLAUSAL_CONJUNCTION] + [R.NOT_LINK_WORD] * 3
    seg_sent, parses = seg_and_parses(pairs, roles, [(1, ROOT), (1, ROOT)])
    att = attach_clausal_conjunction(seg_sent, 0, parses)
    assert att.governor == 1
    assert att.dependent == 4


def test_clausal_conjunction_leftmost_match_wins():
    # segments: [We sing] , [you hum] , [he drummed] and [they dance]
    # "and" must take the leftmost agreeing head verb ("sing"), not the
    # nearest one ("hum").
    pairs = [("We", "PRP"), ("sing", "VBP"), (",", ","),
             ("you", "PRP"), ("hum", "VBP"), (",", ","),
             ("he", "PRP"), ("drummed", "VBD"), ("and", "CC"),
             ("they", "PRP"), ("dance", "VBP"), (".", ".")]
    roles = [R.NOT_LINK_WORD, R.NOT_LINK_WORD, R.CLAUSAL_CONJUNCTIVE_COMMA,
             R.NOT_LINK_WORD, R.NOT_LINK_WORD, R.CLAUSAL_CONJUNCTIVE_COMMA,
             R.NOT_LINK_WORD, R.NOT_LINK_WORD, R.CLAUSAL_CONJUNCTION,
             R.NOT_LINK_WORD, R.NOT_LINK_WORD, R.NOT_LINK_WORD]
    seg_sent, parses = seg_and_parses(
        pairs, roles, [(1, ROOT), (1, ROOT), (1, ROOT), (1, ROOT)]
    )
    att = attach_clausal_conjunction(seg_sent, 2, parses)
    assert att.dependent == 10
    assert att.governor == 1      # "sing", not "hum" at 4


def test_clausal_conjunction_no_right_verb_errors():
    pairs = [("He", "PRP"), ("sleeps", "VBZ"), ("but", "CC"),
             ("rain", "NN"), (".", ".")]
    roles = [R.NOT_LINK_WORD] * 2 + [R.CLAUSAL_CONJUNCTION] + [R.NOT_LINK_WORD] * 2
    seg_sent, parses = seg_and_parses(pairs, roles, [(1, ROOT), (ROOT,)])
    with pytest.raises(SynthesisError, match="no verb"):
        attach_clausal_conjunction(seg_sent, 0, parses)


def know_fixture():
    pairs = [("I", "PRP"), ("know", "VBP"), ("that", "IN"), ("he", "PRP"),
             ("is", "VBZ"), ("angry", "JJ"), (".", ".")]
    roles = [R.NOT_LINK_WORD, R.NOT_LINK_WORD, R.SUBORDINATING_PREPOSITION] \
        + [R.NOT_LINK_WORD] * 4
    return seg_and_parses(pairs, roles, [(1, ROOT), (1, ROOT, 1)])


def test_that_depends_on_verb_and_clause_head_on_that():
    seg_sent, parses = know_fixture()
    att = attach_subordinating_preposition(seg_sent, 0, parses,
                                           [None] * len(seg_sent.tokens))
    assert att.governor == 1      # "know"
    assert att.dependent == 4     # "is"


def test_that_depends_on_adjective():
    pairs = [("I", "PRP"), ("am", "VBP"), ("glad", "JJ"), ("that", "IN"),
             ("I", "PRP"), ("gained", "VBD"), (".", ".")]
    roles = [R.NOT_LINK_WORD] * 3 + [R.SUBORDINATING_PREPOSITION] \
        + [R.NOT_LINK_WORD] * 3
    seg_sent, parses = seg_and_parses(pairs, roles, [(1, ROOT, 1), (1, ROOT)])
    att = attach_subordinating_preposition(seg_sent, 0, parses,
                                           [None] * len(seg_sent.tokens))
    assert att.governor == 2      # "glad"
    assert att.dependent == 5


def test_sentence_initial_subordinator_targets_main_head_verb():
    # "If you smile , the world smiles ." shaped like the manual example
    pairs = [("If", "IN"), ("you", "PRP"), ("smile", "VBP"), (",", ","),
             ("the", "DT"), ("world", "NN"), ("smiles", "VBZ"), (".", ".")]
    roles = [R.SUBORDINATING_PREPOSITION, R.NOT_LINK_WORD, R.NOT_LINK_WORD,
             R.PROSODIC_COMMA] + [R.NOT_LINK_WORD] * 4
    seg_sent, parses = seg_and_parses(
        pairs, roles, [None, (1, ROOT), (1, 2, ROOT)]
    )
    governors = [None] * len(seg_sent.tokens)
    att = attach_subordinating_preposition(seg_sent, 0, parses, governors)
    assert att.dependent == 2     # "smile", head of the clause to the right
    assert att.governor == 6      # "smiles", head verb of the main segment


def test_find_head_segment_skips_governed_and_stop_words(toy_corpus, bundle):
    # Manual sentence: "find" is governed (dependent of "If") so the head
    # segment is the "display" clause.
    s = find_sentence(toy_corpus, "If", "the", "Workbench")
    tree = synthesize_from_gold(s)
    assert tree.governors[11] == 35   # display <- final punctuation
    assert tree.governors[35] == ROOT


def test_find_head_segment_single_segment():
    pairs = [("He", "PRP"), ("sleeps", "VBZ"), (".", ".")]
    seg_sent, parses = seg_and_parses(pairs, [R.NOT_LINK_WORD] * 3, [(1, ROOT)])
    j = find_head_segment(seg_sent, parses, [None] * 3)
    assert j == 0


def test_find_head_segment_skips_while_initial_segment():
    pairs = [("while", "IN"), ("he", "PRP"), ("slept", "VBD"), (",", ","),
             ("she", "PRP"), ("ran", "VBD"), (".", ".")]
    # pretend "while" stayed inside the segment (lexicon variant)
    roles = [R.NOT_LINK_WORD, R.NOT_LINK_WORD, R.NOT_LINK_WORD,
             R.PROSODIC_COMMA, R.NOT_LINK_WORD, R.NOT_LINK_WORD,
             R.NOT_LINK_WORD]
    seg_sent, parses = seg_and_parses(pairs, roles, [(2, 2, ROOT), (1, ROOT)])
    j = find_head_segment(seg_sent, parses, [None] * len(seg_sent.tokens))
    assert j == 1


def test_find_head_segment_skips_continuous_verb():
    pairs = [("Smiling", "VBG"), ("happily", "RB"), (",", ","),
             ("she", "PRP"), ("waves", "VBZ"), (".", ".")]
    roles = [R.NOT_LINK_WORD, R.NOT_LINK_WORD, R.PROSODIC_COMMA,
             R.NOT_LINK_WORD, R.NOT_LINK_WORD, R.NOT_LINK_WORD]
    seg_sent, parses = seg_and_parses(pairs, roles, [(ROOT, 0), (1, ROOT)])
    j = find_head_segment(seg_sent, parses, [None] * len(seg_sent.tokens))
    assert j == 1


def test_find_head_segment_fallback_to_any_verb():
    # both segments disqualified (VBG head / stop word): first segment
    # possessing a verb wins
    pairs = [("Smiling", "VBG"), ("happily", "RB"), (",", ","),
             ("also", "RB"), ("she", "PRP"), ("waves", "VBZ"), (".", ".")]
    roles = [R.NOT_LINK_WORD, R.NOT_LINK_WORD, R.PROSODIC_COMMA,
             R.NOT_LINK_WORD, R.NOT_LINK_WORD, R.NOT_LINK_WORD,
             R.NOT_LINK_WORD]
    seg_sent, parses = seg_and_parses(pairs, roles, [(ROOT, 0), (2, 2, ROOT)])
    j = find_head_segment(seg_sent, parses, [None] * len(seg_sent.tokens))
    assert j == 0
    assert head_segment_target(seg_sent, parses, j) == 0  # "Smiling"


def test_find_head_segment_fallback_no_verbs():
    pairs = [("At", "IN"), ("noon", "NN"), (",", ","), ("the", "DT"),
             ("dawn", "NN"), (".", ".")]
    roles = [R.NON_SEGMENTING_PREPOSITION, R.NOT_LINK_WORD, R.PROSODIC_COMMA,
             R.NOT_LINK_WORD, R.NOT_LINK_WORD, R.NOT_LINK_WORD]
    seg_sent, parses = seg_and_parses(pairs, roles, [(1, ROOT), (1, ROOT)])
    j = find_head_segment(seg_sent, parses, [None] * len(seg_sent.tokens))
    assert j == 0
    assert head_segment_target(seg_sent, parses, j) == 1  # last token of it


def chain_fixture():
    pairs = [("At", "IN"), ("dawn", "NN"), (",", ","),
             ("at", "IN"), ("noon", "NN"), (",", ","),
             ("she", "PRP"), ("runs", "VBZ"), (".", ".")]
    roles = [R.NON_SEGMENTING_PREPOSITION, R.NOT_LINK_WORD, R.PROSODIC_COMMA,
             R.NON_SEGMENTING_PREPOSITION, R.NOT_LINK_WORD, R.PROSODIC_COMMA,
             R.NOT_LINK_WORD, R.NOT_LINK_WORD, R.NOT_LINK_WORD]
    return seg_and_parses(pairs, roles, [(ROOT, 0), (ROOT, 3 - 3), (1, ROOT)])


def test_chaining_attaches_left_segments_in_order():
    seg_sent, parses = chain_fixture()
    governors = [None] * len(seg_sent.tokens)
    head = find_head_segment(seg_sent, parses, governors)
    assert head == 2
    governors[7] = 8
    arcs = chain_remaining_segments(seg_sent, parses, governors, head)
    assert arcs == [(0, 7), (3, 0)]     # first to head verb, second to first


def test_chaining_no_new_arcs_when_all_linked():
    seg_sent, parses = two_clause_fixture()
    governors = [None] * len(seg_sent.tokens)
    governors[1] = 7   # left head rooted
    governors[5] = 3   # right head attached to the conjunction
    arcs = chain_remaining_segments(seg_sent, parses, governors, 0)
    assert arcs == []


def test_chaining_middle_head():
    pairs = [("At", "IN"), ("dawn", "NN"), (",", ","),
             ("she", "PRP"), ("runs", "VBZ"), (",", ","),
             ("at", "IN"), ("noon", "NN"), (".", ".")]
    roles = [R.NON_SEGMENTING_PREPOSITION, R.NOT_LINK_WORD, R.PROSODIC_COMMA,
             R.NOT_LINK_WORD, R.NOT_LINK_WORD, R.PROSODIC_COMMA,
             R.NON_SEGMENTING_PREPOSITION, R.NOT_LINK_WORD, R.NOT_LINK_WORD]
    seg_sent, parses = seg_and_parses(
        pairs, roles, [(ROOT, 0), (1, ROOT), (ROOT, 6 - 6)]
    )
    governors = [None] * len(seg_sent.tokens)
    governors[4] = 8   # middle head verb rooted
    arcs = chain_remaining_segments(seg_sent, parses, governors, 1)
    assert (0, 4) in arcs and (6, 4) in arcs


# --- synthesize end to end with oracle components -------------------------

def test_synthesize_two_clause_tree(toy_corpus):
    s = find_sentence(toy_corpus, "He", "likes", "chocolates")
    tree = synthesize_from_gold(s)
    assert tree.governors == tuple(s.governors)
    assert validate_tree(tree).proper


def test_synthesize_manual_sentence(toy_corpus):
    s = find_sentence(toy_corpus, "If", "the", "Workbench")
    tree = synthesize_from_gold(s)
    assert tree.governors == tuple(s.governors)
    assert validate_tree(tree).proper


def test_synthesize_single_segment_equals_segment_parse(toy_corpus):
    s = find_sentence(toy_corpus, "She", "prefers")
    tree = synthesize_from_gold(s)
    assert tree.governors == tuple(s.governors)


def test_synthesize_reproduces_every_gold_tree(toy_corpus):
    for s in toy_corpus:
        tree = synthesize_from_gold(s)
        assert tree.governors == tuple(s.governors), \
            " ".join(t.form for t in s.tokens)


def test_coverage_and_leaf_invariants(toy_corpus):
    for s in toy_corpus:
        tree = synthesize_from_gold(s)
        roots = [i for i, g in enumerate(tree.governors) if g == ROOT]
        assert len(roots) == 1
        assert not any(t.form.startswith("NP#") for t in tree.tokens)
        for i, token in enumerate(s.tokens):
            if s.roles[i] is R.PROSODIC_COMMA:
                assert all(g != i for g in tree.governors)  # leaf
            if s.roles[i] is R.CLAUSAL_CONJUNCTION:
                gov = tree.governors[i]
                assert s.tokens[gov].is_verb()
                dependents = [j for j, g in enumerate(tree.governors) if g == i]
                assert all(s.tokens[j].is_verb() for j in dependents)


def test_rule_determinism(toy_corpus):
    for s in toy_corpus[:10]:
        assert synthesize_from_gold(s).governors == synthesize_from_gold(s).governors


def test_trace_records_rule_firings(toy_corpus):
    s = find_sentence(toy_corpus, "If", "the", "Workbench")
    trace = []
    synthesize_from_gold(s, trace=trace)
    text = "\n".join(trace)
    assert "prosodic-comma" in text
    assert "clausal" in text
    assert "subordinator" in text
    assert "head-segment" in text
