"""clausecut: divide-and-conquer dependency parsing.

Complex sentences are simplified before parsing: link words (commas,
conjunctions, prepositions) are disambiguated, the sentence is split at
segmenting link words, noun phrases are bracketed and compressed away,
the pieces are parsed separately, and a rule engine welds the sub-trees
into the final parse.  A whole-sentence baseline parser and an
evaluation harness allow side-by-side comparison.
"""

import os

from .core import (
    ROOT,
    PENN_TAGS,
    CorpusFormatError,
    DependencyTree,
    LinkWordAttachment,
    LinkWordRole,
    SegmentedSentence,
    Sentence,
    Token,
    ValidityReport,
    read_corpus,
    validate_tree,
    write_corpus,
)
from .tagger import TaggerModel, tag, train_tagger
from .roles import (
    PrepositionLexicon,
    RoleClassifier,
    RoleModels,
    TrainConfig,
    WindowFeatures,
    classify_comma,
    classify_conjunction,
    classify_preposition,
    extract_window_features,
    train_classifier,
)
from .segmenter import segment
from .chunker import (
    ChunkerModel,
    NPExtraction,
    NPGroup,
    NPSpan,
    bracket,
    extract_nps,
    group_nps,
    train_chunker,
)
from .parser import (
    ParserModel,
    candidate_governors,
    repair_tree,
    select_governors,
    train_parser,
)
from .synthesizer import (
    SegmentParse,
    SynthesisError,
    VerbDescriptor,
    attach_clausal_conjunction,
    attach_prosodic_comma,
    attach_subordinating_preposition,
    chain_remaining_segments,
    find_head_segment,
    reattach_np,
    synthesize,
)
from .pipeline import (
    ModelBundle,
    PipelineError,
    load_bundle,
    parse_baseline,
    parse_dc,
    run_dc,
    save_bundle,
    train_bundle,
)
from .evaluation import (
    EvalReport,
    candidate_reduction_stats,
    candidate_reduction_stats_with_models,
    error_reduction,
    evaluate,
)

__version__ = "0.1.0"


def toy_corpus_path() -> str:
    """Path of the bundled hand-annotated corpus."""
    return os.path.join(os.path.dirname(__file__), "data", "toy.corpus")
