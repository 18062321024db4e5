#!/usr/bin/env python3
"""Build src/clausecut/data/toy.corpus from the compact sentence specs
below and verify, for every sentence, that the gold tree is exactly what
the synthesis rules produce from gold roles, gold chunks, and gold
sub-trees.  Run from the repository root:

    PYTHONPATH=src python3 tools/build_toy_corpus.py
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from clausecut.core import (
    ROOT,
    LinkWordRole,
    Sentence,
    Token,
    read_corpus,
    validate_tree,
    write_corpus,
)
from clausecut.pipeline import (
    derive_np_trees,
    derive_segment_trees,
    synthesize_from_gold,
    whole_sentence_trees,
)
from clausecut.roles import (
    COMMA_ROLE_ORDER,
    CONJUNCTION_ROLE_ORDER,
    extract_window_features,
)

ROLES = {
    "_": None,
    "pc": LinkWordRole.PROSODIC_COMMA,
    "lcc": LinkWordRole.LOGICAL_CONJUNCTIVE_COMMA,
    "ccc": LinkWordRole.CLAUSAL_CONJUNCTIVE_COMMA,
    "lc": LinkWordRole.LOGICAL_CONJUNCTION,
    "cc": LinkWordRole.CLAUSAL_CONJUNCTION,
    "sp": LinkWordRole.SUBORDINATING_PREPOSITION,
    "np": LinkWordRole.NON_SEGMENTING_PREPOSITION,
}
BIO = {"B": "B-NP", "I": "I-NP", "O": "O"}

# form/POS/gov/role/bio ; gov "R" = ROOT
SENTENCES = [
    # Two clauses joined by a clausal "but", with a three-NP group on
    # the left.
    """He/PRP/1/_/B likes/VBZ/12/_/O chocolates/NNS/1/_/B ,/,/2/lcc/O
       candies/NNS/2/_/B and/CC/4/lc/O cakes/NNS/4/_/B but/CC/1/cc/O
       she/PRP/9/_/B likes/VBZ/7/_/O sour/JJ/11/_/B prunes/NNS/9/_/I ././R/_/O""",
    # Software-manual sentence: sentence-initial subordinator, prosodic
    # comma, clausal "and", an of-group, head verb "display".
    """If/IN/11/sp/O the/DT/2/_/B Workbench/NNP/3/_/I cannot/MD/4/_/O
       find/VB/0/_/O any/DT/7/_/B fuzzy/JJ/7/_/I match/NN/4/_/I ,/,/7/pc/O
       it/PRP/10/_/B will/MD/11/_/O display/VB/35/_/O a/DT/14/_/B
       corresponding/JJ/14/_/I message/NN/11/_/I in/IN/11/np/O the/DT/19/_/B
       lower/JJ/19/_/I right/JJ/19/_/I corner/NN/15/_/I of/IN/19/np/O
       its/PRP$/23/_/B status/NN/23/_/I bar/NN/19/_/I and/CC/11/cc/O
       you/PRP/26/_/B will/MD/27/_/O be/VB/28/_/O presented/VBN/24/_/O
       with/IN/28/np/O an/DT/34/_/B empty/JJ/34/_/I yellow/JJ/34/_/I
       target/NN/34/_/I field/NN/29/_/I ././R/_/O""",
    # Prosodic comma then a logical comma and conjunction inside one
    # segment (VP coordination kept unsegmented).
    """When/WRB/2/_/O Jane/NNP/2/_/B goes/VBZ/7/_/O to/TO/2/_/O
       school/NN/3/_/B ,/,/4/pc/O she/PRP/7/_/B takes/VBZ/21/_/O a/DT/9/_/B
       bus/NN/7/_/I ,/,/9/lcc/O walks/VBZ/7/_/O 5/CD/13/_/B
       minutes/NNS/11/_/I and/CC/11/lc/O continues/VBZ/11/_/O the/DT/17/_/B
       journey/NN/15/_/I on/IN/15/np/O the/DT/20/_/B rail/NN/18/_/I ././R/_/O""",
    # Logical "but" (blocked from the NP group by the adverb).
    """I/PRP/1/_/B like/VBP/8/_/O ice-cream/NN/1/_/B ,/,/2/lcc/O
       hot-dogs/NNS/2/_/B but/CC/2/lc/O not/RB/7/_/O pies/NNS/5/_/B ././R/_/O""",
    # Clausal conjunctive comma plus clausal "but" with a morphological
    # match on the leftmost segment.
    """I/PRP/1/_/B like/VBP/10/_/O ice-cream/NN/1/_/B ,/,/1/ccc/O
       crave/VBP/3/_/O for/IN/4/np/O hot-dogs/NNS/5/_/B but/CC/1/cc/O
       detest/VBP/7/_/O pies/NNS/8/_/B ././R/_/O""",
    # Subordinating "that" under a verb.
    """I/PRP/1/_/B know/VBP/6/_/O that/IN/1/sp/O he/PRP/4/_/B is/VBZ/2/_/O
       angry/JJ/4/_/O ././R/_/O""",
    # Subordinating "that" under an adjective.
    """I/PRP/1/_/B am/VBP/8/_/O glad/JJ/1/_/O that/IN/2/sp/O I/PRP/5/_/B
       have/VBP/6/_/O gained/VBN/3/_/O weight/NN/6/_/B ././R/_/O""",
    # Short conjoined sentence for candidate-count checks.
    """He/PRP/1/_/B likes/VBZ/7/_/O oranges/NNS/1/_/B but/CC/1/cc/O
       she/PRP/5/_/B prefers/VBZ/3/_/O apples/NNS/5/_/B ././R/_/O""",
    # Of-groups on both sides of the verb.
    """The/DT/1/_/B President/NNP/8/_/I of/IN/1/np/O the/DT/5/_/B
       United/NNP/5/_/I States/NNPS/1/_/I of/IN/5/np/O America/NNP/5/_/B
       meets/VBZ/13/_/O the/DT/10/_/B Queen/NNP/8/_/I of/IN/10/np/O
       England/NNP/10/_/B ././R/_/O""",
    """The/DT/1/_/B cat/NN/2/_/I likes/VBZ/4/_/O fish/NN/2/_/B ././R/_/O""",
    # Two clausal conjunctive commas and a clausal "and" whose governor
    # scan matches the leftmost segment.
    """We/PRP/1/_/B sing/VBP/11/_/O ,/,/1/ccc/O you/PRP/4/_/B hum/VBP/2/_/O
       ,/,/4/ccc/O he/PRP/7/_/B drummed/VBD/5/_/O and/CC/1/cc/O
       they/PRP/10/_/B dance/VBP/8/_/O ././R/_/O""",
    # Sentence-initial clausal conjunctions (empty first segment).
    """But/CC/2/cc/O she/PRP/2/_/B stayed/VBD/4/_/O calm/JJ/2/_/O ././R/_/O""",
    """And/CC/3/cc/O the/DT/2/_/B rain/NN/3/_/I stopped/VBD/4/_/O ././R/_/O""",
    # Logical conjunction over adjectives.
    """The/DT/1/_/B soup/NN/2/_/I is/VBZ/6/_/O hot/JJ/2/_/O and/CC/3/lc/O
       spicy/JJ/4/_/O ././R/_/O""",
    # Three-NP group.
    """He/PRP/1/_/B buys/VBZ/7/_/O apples/NNS/1/_/B ,/,/2/lcc/O
       pears/NNS/2/_/B and/CC/4/lc/O plums/NNS/4/_/B ././R/_/O""",
    # Two-NP group without a comma.
    """He/PRP/1/_/B likes/VBZ/5/_/O bread/NN/1/_/B and/CC/2/lc/O
       butter/NN/2/_/B ././R/_/O""",
    # Fronted PP segment chained to the head segment.
    """At/IN/4/np/O noon/NN/0/_/B ,/,/1/pc/O she/PRP/4/_/B reads/VBZ/6/_/O
       books/NNS/4/_/B ././R/_/O""",
    """In/IN/5/np/O the/DT/2/_/B morning/NN/0/_/I ,/,/2/pc/O he/PRP/5/_/B
       runs/VBZ/6/_/O ././R/_/O""",
    """At/IN/5/np/O night/NN/0/_/B ,/,/1/pc/O the/DT/4/_/B city/NN/5/_/I
       sleeps/VBZ/6/_/O ././R/_/O""",
    # "that" variants.
    """She/PRP/1/_/B said/VBD/6/_/O that/IN/1/sp/O the/DT/4/_/B
       plan/NN/5/_/I works/VBZ/2/_/O ././R/_/O""",
    """He/PRP/1/_/B seems/VBZ/6/_/O sure/JJ/1/_/O that/IN/2/sp/O
       they/PRP/5/_/B agree/VBP/3/_/O ././R/_/O""",
    """I/PRP/1/_/B think/VBP/5/_/O that/IN/1/sp/O she/PRP/4/_/B
       sleeps/VBZ/2/_/O ././R/_/O""",
    """We/PRP/1/_/B are/VBP/6/_/O happy/JJ/1/_/O that/IN/2/sp/O
       you/PRP/5/_/B came/VBD/3/_/O ././R/_/O""",
    # Subordinators other than "that".
    """If/IN/6/sp/O you/PRP/2/_/B smile/VBP/0/_/O ,/,/2/pc/O the/DT/5/_/B
       world/NN/6/_/I smiles/VBZ/7/_/O ././R/_/O""",
    """They/PRP/1/_/B left/VBD/5/_/O because/IN/1/sp/O it/PRP/4/_/B
       rained/VBD/2/_/O ././R/_/O""",
    # Continuous head verb and an "also" segment: head-segment fallback.
    """Smiling/VBG/6/_/O happily/RB/0/_/O ,/,/1/pc/O also/RB/5/_/O
       she/PRP/5/_/B waves/VBZ/0/_/O ././R/_/O""",
    # Two verbless fronted segments chained in order.
    """At/IN/7/np/O dawn/NN/0/_/B ,/,/1/pc/O at/IN/0/np/O noon/NN/3/_/B
       ,/,/4/pc/O she/PRP/7/_/B runs/VBZ/8/_/O ././R/_/O""",
    # Interjection segment.
    """Yes/UH/3/_/O ,/,/0/pc/O I/PRP/3/_/B agree/VBP/4/_/O ././R/_/O""",
    # Subject of-group.
    """The/DT/1/_/B size/NN/5/_/I of/IN/1/np/O the/DT/4/_/B file/NN/1/_/I
       matters/VBZ/6/_/O ././R/_/O""",
    """The/DT/1/_/B roof/NN/5/_/I of/IN/1/np/O the/DT/4/_/B house/NN/1/_/I
       leaks/VBZ/6/_/O ././R/_/O""",
    """The/DT/1/_/B door/NN/5/_/I of/IN/1/np/O the/DT/4/_/B car/NN/1/_/I
       opened/VBD/6/_/O ././R/_/O""",
    """A/DT/1/_/B friend/NN/5/_/I of/IN/1/np/O the/DT/4/_/B family/NN/1/_/I
       visits/VBZ/6/_/O ././R/_/O""",
    # Aux + main verb patterns, mirroring the manual fixture's clauses.
    """It/PRP/1/_/B will/MD/2/_/O display/VB/8/_/O a/DT/4/_/B
       message/NN/2/_/I in/IN/2/np/O the/DT/7/_/B corner/NN/5/_/I ././R/_/O""",
    """You/PRP/1/_/B will/MD/2/_/O be/VB/3/_/O presented/VBN/7/_/O
       with/IN/3/np/O a/DT/6/_/B gift/NN/4/_/I ././R/_/O""",
    """She/PRP/1/_/B will/MD/2/_/O come/VB/3/_/O ././R/_/O""",
    """He/PRP/1/_/B can/MD/2/_/O swim/VB/3/_/O ././R/_/O""",
    """The/DT/1/_/B file/NN/2/_/I will/MD/3/_/O load/VB/4/_/O ././R/_/O""",
    """You/PRP/1/_/B must/MD/2/_/O wait/VB/3/_/O ././R/_/O""",
    # Verb-attached PPs.
    """She/PRP/1/_/B sings/VBZ/5/_/O in/IN/1/np/O the/DT/4/_/B
       hall/NN/2/_/I ././R/_/O""",
    """He/PRP/1/_/B lives/VBZ/5/_/O in/IN/1/np/O a/DT/4/_/B city/NN/2/_/I ././R/_/O""",
    """She/PRP/1/_/B works/VBZ/5/_/O at/IN/1/np/O the/DT/4/_/B
       office/NN/2/_/I ././R/_/O""",
    """The/DT/1/_/B book/NN/2/_/I lies/VBZ/6/_/O on/IN/2/np/O the/DT/5/_/B
       table/NN/3/_/I ././R/_/O""",
    """He/PRP/1/_/B plays/VBZ/5/_/O with/IN/1/np/O the/DT/4/_/B
       ball/NN/2/_/I ././R/_/O""",
    # Simple transitive clauses.
    """She/PRP/1/_/B prefers/VBZ/3/_/O apples/NNS/1/_/B ././R/_/O""",
    """The/DT/1/_/B dog/NN/2/_/I chases/VBZ/5/_/O the/DT/4/_/B
       cat/NN/2/_/I ././R/_/O""",
    """A/DT/1/_/B man/NN/2/_/I reads/VBZ/5/_/O a/DT/4/_/B book/NN/2/_/I ././R/_/O""",
    """The/DT/1/_/B child/NN/2/_/I wants/VBZ/4/_/O milk/NN/2/_/B ././R/_/O""",
    """She/PRP/1/_/B hates/VBZ/3/_/O rain/NN/1/_/B ././R/_/O""",
    """He/PRP/1/_/B sees/VBZ/3/_/O birds/NNS/1/_/B ././R/_/O""",
    """The/DT/1/_/B parser/NN/2/_/I finds/VBZ/4/_/O errors/NNS/2/_/B ././R/_/O""",
    """The/DT/1/_/B team/NN/2/_/I wins/VBZ/4/_/O games/NNS/2/_/B ././R/_/O""",
    """A/DT/1/_/B woman/NN/2/_/I buys/VBZ/4/_/O bread/NN/2/_/B ././R/_/O""",
    """They/PRP/1/_/B like/VBP/3/_/O music/NN/1/_/B ././R/_/O""",
    """We/PRP/1/_/B need/VBP/3/_/O help/NN/1/_/B ././R/_/O""",
    # Conjoined clauses (clausal conjunctions).
    """The/DT/1/_/B dog/NN/2/_/I barks/VBZ/7/_/O but/CC/2/cc/O the/DT/5/_/B
       cat/NN/6/_/I sleeps/VBZ/3/_/O ././R/_/O""",
    """She/PRP/1/_/B cooks/VBZ/5/_/O and/CC/1/cc/O he/PRP/4/_/B
       cleans/VBZ/2/_/O ././R/_/O""",
    """He/PRP/1/_/B smiled/VBD/5/_/O but/CC/1/cc/O she/PRP/4/_/B
       frowned/VBD/2/_/O ././R/_/O""",
    """The/DT/1/_/B sun/NN/2/_/I rises/VBZ/7/_/O and/CC/2/cc/O the/DT/5/_/B
       moon/NN/6/_/I sets/VBZ/3/_/O ././R/_/O""",
    """I/PRP/1/_/B sing/VBP/5/_/O but/CC/1/cc/O you/PRP/4/_/B
       dance/VBP/2/_/O ././R/_/O""",
    """The/DT/1/_/B phone/NN/2/_/I rang/VBD/7/_/O and/CC/2/cc/O the/DT/5/_/B
       dog/NN/6/_/I barked/VBD/3/_/O ././R/_/O""",
    """Jane/NNP/1/_/B sings/VBZ/5/_/O and/CC/1/cc/O Peter/NNP/4/_/B
       dances/VBZ/2/_/O ././R/_/O""",
    """He/PRP/1/_/B eats/VBZ/8/_/O fresh/JJ/3/_/B bread/NN/1/_/I but/CC/1/cc/O
       she/PRP/6/_/B drinks/VBZ/4/_/O milk/NN/6/_/B ././R/_/O""",
    # Clausal conjunctive commas between short clauses.
    """He/PRP/1/_/B arrived/VBD/5/_/O ,/,/1/ccc/O she/PRP/4/_/B
       left/VBD/2/_/O ././R/_/O""",
    """It/PRP/1/_/B rains/VBZ/5/_/O ,/,/1/ccc/O we/PRP/4/_/B
       stay/VBP/2/_/O ././R/_/O""",
    # Adjective-initial object NPs.
    """She/PRP/1/_/B eats/VBZ/4/_/O red/JJ/3/_/B apples/NNS/1/_/I ././R/_/O""",
    """He/PRP/1/_/B sings/VBZ/4/_/O old/JJ/3/_/B songs/NNS/1/_/I ././R/_/O""",
    """They/PRP/1/_/B buy/VBP/4/_/O cheap/JJ/3/_/B books/NNS/1/_/I ././R/_/O""",
    """We/PRP/1/_/B drink/VBP/4/_/O cold/JJ/3/_/B milk/NN/1/_/I ././R/_/O""",
    # Passives.
    """You/PRP/1/_/B will/MD/2/_/O be/VB/3/_/O invited/VBN/4/_/O ././R/_/O""",
    """She/PRP/1/_/B will/MD/2/_/O be/VB/3/_/O promoted/VBN/4/_/O ././R/_/O""",
    """The/DT/1/_/B window/NN/2/_/I will/MD/3/_/O be/VB/4/_/O
       closed/VBN/5/_/O ././R/_/O""",
    """The/DT/1/_/B door/NN/2/_/I will/MD/3/_/O be/VB/4/_/O
       locked/VBN/5/_/O ././R/_/O""",
    """The/DT/1/_/B house/NN/2/_/I will/MD/3/_/O be/VB/4/_/O built/VBN/8/_/O
       in/IN/4/np/O a/DT/7/_/B day/NN/5/_/I ././R/_/O""",
    # Verb, object, locative PP.
    """He/PRP/1/_/B reads/VBZ/7/_/O a/DT/3/_/B book/NN/1/_/I in/IN/1/np/O
       the/DT/6/_/B park/NN/4/_/I ././R/_/O""",
    """They/PRP/1/_/B play/VBP/7/_/O a/DT/3/_/B game/NN/1/_/I in/IN/1/np/O
       the/DT/6/_/B garden/NN/4/_/I ././R/_/O""",
    """She/PRP/1/_/B writes/VBZ/7/_/O a/DT/3/_/B letter/NN/1/_/I in/IN/1/np/O
       the/DT/6/_/B evening/NN/4/_/I ././R/_/O""",
    # Compound nouns and stacked modifiers.
    """The/DT/2/_/B status/NN/2/_/I bar/NN/3/_/I shows/VBZ/5/_/O
       errors/NNS/3/_/B ././R/_/O""",
    """Its/PRP$/2/_/B target/NN/2/_/I field/NN/3/_/I stays/VBZ/5/_/O
       empty/JJ/3/_/O ././R/_/O""",
    """The/DT/3/_/B big/JJ/3/_/I red/JJ/3/_/I button/NN/4/_/I
       blinks/VBZ/5/_/O ././R/_/O""",
    # More adjective-initial and long noun phrases.
    """He/PRP/1/_/B wants/VBZ/4/_/O sour/JJ/3/_/B plums/NNS/1/_/I ././R/_/O""",
    """She/PRP/1/_/B likes/VBZ/4/_/O quiet/JJ/3/_/B rooms/NNS/1/_/I ././R/_/O""",
    """They/PRP/1/_/B see/VBP/4/_/O small/JJ/3/_/B dogs/NNS/1/_/I ././R/_/O""",
    """He/PRP/1/_/B hears/VBZ/4/_/O young/JJ/3/_/B children/NNS/1/_/I ././R/_/O""",
    """We/PRP/1/_/B serve/VBP/4/_/O cold/JJ/3/_/B drinks/NNS/1/_/I ././R/_/O""",
    """She/PRP/1/_/B reads/VBZ/4/_/O long/JJ/3/_/B letters/NNS/1/_/I ././R/_/O""",
    """The/DT/3/_/B old/JJ/3/_/I gray/JJ/3/_/I cat/NN/4/_/I sleeps/VBZ/5/_/O ././R/_/O""",
    """A/DT/3/_/B small/JJ/3/_/I black/JJ/3/_/I dog/NN/4/_/I barks/VBZ/5/_/O ././R/_/O""",
    """The/DT/3/_/B fuzzy/JJ/3/_/I match/NN/3/_/I window/NN/4/_/I opens/VBZ/5/_/O ././R/_/O""",
    """His/PRP$/3/_/B empty/JJ/3/_/I yellow/JJ/3/_/I folder/NN/4/_/I vanished/VBD/5/_/O ././R/_/O""",
    # Modal, verb, object.
    """She/PRP/1/_/B will/MD/2/_/O sing/VB/5/_/O a/DT/4/_/B song/NN/2/_/I ././R/_/O""",
    """He/PRP/1/_/B can/MD/2/_/O drive/VB/5/_/O a/DT/4/_/B car/NN/2/_/I ././R/_/O""",
    """They/PRP/1/_/B must/MD/2/_/O write/VB/5/_/O a/DT/4/_/B letter/NN/2/_/I ././R/_/O""",
    """You/PRP/1/_/B can/MD/2/_/O keep/VB/5/_/O the/DT/4/_/B change/NN/2/_/I ././R/_/O""",
    """We/PRP/1/_/B will/MD/2/_/O buy/VB/5/_/O the/DT/4/_/B house/NN/2/_/I ././R/_/O""",
    """He/PRP/1/_/B must/MD/2/_/O finish/VB/5/_/O the/DT/4/_/B report/NN/2/_/I ././R/_/O""",
    # Plain present-tense transitives.
    """We/PRP/1/_/B sing/VBP/3/_/O songs/NNS/1/_/B ././R/_/O""",
    """They/PRP/1/_/B grow/VBP/3/_/O flowers/NNS/1/_/B ././R/_/O""",
    """We/PRP/1/_/B build/VBP/3/_/O houses/NNS/1/_/B ././R/_/O""",
]


def parse_spec(spec: str, num: int) -> Sentence:
    tokens = []
    governors = []
    roles = []
    bio = []
    for i, item in enumerate(spec.split()):
        parts = item.rsplit("/", 4)
        if len(parts) != 5:
            raise SystemExit(f"sentence {num}: bad token spec {item!r}")
        form, pos, gov, role, chunk = parts
        tokens.append(Token(i, form, pos))
        governors.append(ROOT if gov == "R" else int(gov))
        roles.append(ROLES[role])
        bio.append(BIO[chunk])
    return Sentence(tuple(tokens), tuple(governors), tuple(roles), tuple(bio))


def main() -> None:
    sentences = [parse_spec(spec, n) for n, spec in enumerate(SENTENCES)]

    failures = 0
    for num, sentence in enumerate(sentences):
        text = " ".join(t.form for t in sentence.tokens)
        report = validate_tree(sentence.tree())
        if not report.proper:
            print(f"[{num}] NOT PROPER: {text}")
            failures += 1
            continue
        produced = synthesize_from_gold(sentence)
        if produced.governors != sentence.tree().governors:
            print(f"[{num}] RULE MISMATCH: {text}")
            for i, (a, b) in enumerate(zip(sentence.tree().governors, produced.governors)):
                if a != b:
                    print(f"    token {i} {sentence.tokens[i].form!r}: gold {a}, rules {b}")
            failures += 1

    # Derivations must be clean.
    np_trees = derive_np_trees(sentences)
    seg_trees = derive_segment_trees(sentences)
    full_trees = whole_sentence_trees(sentences)

    # Classifier windows must not carry conflicting labels.
    seen = {}
    for num, sentence in enumerate(sentences):
        for i, role in enumerate(sentence.roles):
            if role in COMMA_ROLE_ORDER or role in CONJUNCTION_ROLE_ORDER:
                feats = extract_window_features(sentence.tokens, i, 8)
                key = (sentence.tokens[i].pos, feats.set_bits)
                if key in seen and seen[key][0] != role:
                    other = seen[key]
                    print(f"[{num}] WINDOW CONFLICT at token {i}: {role.value} "
                          f"vs {other[0].value} (sentence {other[1]})")
                    failures += 1
                else:
                    seen[key] = (role, num)

    if failures:
        raise SystemExit(f"{failures} failures; corpus not written")

    out = os.path.join(os.path.dirname(__file__), "..", "src", "clausecut",
                       "data", "toy.corpus")
    os.makedirs(os.path.dirname(out), exist_ok=True)
    write_corpus(sentences, out)
    back = read_corpus(out)
    assert len(back) == len(sentences)
    print(f"wrote {len(sentences)} sentences, {sum(len(s) for s in sentences)} tokens")
    print(f"derived {len(np_trees)} NP trees, {len(seg_trees)} segment trees, "
          f"{len(full_trees)} sentence trees")


if __name__ == "__main__":
    main()
