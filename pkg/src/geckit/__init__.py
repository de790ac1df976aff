"""geckit: an edit-tag toolkit for grammatical error correction.

The pieces: edit tags and their application engine, a symmetric-delete
speller behind the ``$SPELL`` tag, a lexicon+rules inflection engine
behind the ``$INFLECT_POS`` tags, corpus preprocessing that produces
those tags from parallel data, inference-tweak selection and tuning,
span-based ensemble voting, and span-based F-beta scoring.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .apply import apply_tags, detokenize
from .corpus import LabeledSentence, read_labeled_jsonl, write_labeled_jsonl
from .ensemble import (
    EditSpan,
    SpanType,
    VoteOutcome,
    apply_spans,
    extract_spans,
    vote,
    vote_detailed,
)
from .errors import ContractViolation, DataError
from .infer import (
    BaselineSpellTagger,
    InferenceTweaks,
    TagDistribution,
    correct_iteratively,
    grid_search,
    select_tags,
)
from .inflect import (
    InflectionEngine,
    InflectionLexicon,
    VerbFormTable,
    load_lexicon,
)
from .preprocess import (
    SentencePair,
    align_and_tag,
    build_vocabulary,
    label_pair,
    preprocess_pairs,
    rewrite_inflect,
    rewrite_spell,
)
from .score import (
    AggregateReport,
    GoldSentence,
    ScoreReport,
    aggregate,
    fbeta,
    load_m2,
    parse_m2,
    score_corpus,
    score_sentence,
)
from .speller import (
    Correction,
    SpellDictionary,
    build_dictionary,
    load_frequency_dictionary,
    osa_distance,
)
from .tags import (
    EditTag,
    PtbPos,
    START_TOKEN,
    TagError,
    format_tag,
    parse_tag,
)
from .vocab import TagsetKind, TagVocabulary, closed_class_tags

__all__ = [
    "__version__",
    "AggregateReport",
    "BaselineSpellTagger",
    "ContractViolation",
    "Correction",
    "DataError",
    "EditSpan",
    "EditTag",
    "GoldSentence",
    "InferenceTweaks",
    "InflectionEngine",
    "InflectionLexicon",
    "LabeledSentence",
    "PtbPos",
    "START_TOKEN",
    "ScoreReport",
    "SentencePair",
    "SpanType",
    "SpellDictionary",
    "TagDistribution",
    "TagError",
    "TagVocabulary",
    "TagsetKind",
    "VerbFormTable",
    "aggregate",
    "align_and_tag",
    "apply_spans",
    "apply_tags",
    "build_dictionary",
    "build_vocabulary",
    "closed_class_tags",
    "correct_iteratively",
    "detokenize",
    "extract_spans",
    "fbeta",
    "format_tag",
    "grid_search",
    "label_pair",
    "load_frequency_dictionary",
    "load_lexicon",
    "load_m2",
    "osa_distance",
    "parse_m2",
    "parse_tag",
    "preprocess_pairs",
    "read_labeled_jsonl",
    "rewrite_inflect",
    "rewrite_spell",
    "score_corpus",
    "score_sentence",
    "select_tags",
    "vote",
    "vote_detailed",
    "VoteOutcome",
    "write_labeled_jsonl",
]
