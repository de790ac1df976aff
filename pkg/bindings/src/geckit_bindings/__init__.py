"""In-process bindings for training pipelines.

Four plain-data entry points wrap the toolkit so an externally trained
tagger can preprocess corpora, apply edit tags, vote over system outputs
and score hypotheses without touching the CLI: everything goes in and
out as lists of strings (tokens, canonical tag syntax) or metric dicts.

Dictionary and lexicon objects are built once by the loader helpers and
shared read-only; nothing here holds mutable global state, so all calls
are safe from multiple threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from geckit import (
    InflectionEngine,
    SentencePair,
    SpellDictionary,
    TagsetKind,
    VerbFormTable,
    apply_tags as _apply_tags,
    fbeta,
    label_pair,
    load_frequency_dictionary,
    load_lexicon,
    parse_m2,
    parse_tag,
    score_corpus as _score_corpus,
    vote as _vote,
)
from geckit.data import default_dictionary_path, default_lexicon_path
from geckit.tags import format_tag

__version__ = "0.1.0"

__all__ = [
    "CorpusRow",
    "apply_edits",
    "fbeta",
    "load_inflection_engine",
    "load_speller",
    "load_verb_forms",
    "preprocess_pairs",
    "rows_to_jsonl",
    "score",
    "vote",
]


@dataclass(frozen=True)
class CorpusRow:
    """One labeled sentence: tokens plus canonical tag strings."""

    src: tuple[str, ...]
    tags: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.src) != len(self.tags):
            raise ValueError("src and tags must have equal length")


def load_speller(path: str | Path | None = None) -> SpellDictionary:
    return load_frequency_dictionary(path or default_dictionary_path())


def load_inflection_engine(path: str | Path | None = None) -> InflectionEngine:
    return InflectionEngine(load_lexicon(path or default_lexicon_path()))


def load_verb_forms(path: str | Path | None = None) -> VerbFormTable:
    return VerbFormTable.from_file(path or default_lexicon_path())


def preprocess_pairs(
    pairs: Iterable[tuple[Sequence[str], Sequence[str]]],
    tagset_kind: str,
    speller: SpellDictionary | None = None,
    engine: InflectionEngine | None = None,
    verb_forms: VerbFormTable | None = None,
) -> list[CorpusRow]:
    """Label (source tokens, target tokens) pairs with edit tags.

    Semantically identical to the CLI ``preprocess`` subcommand with the
    same tagset; sentences whose tags cannot reproduce the target are
    dropped, exactly as the CLI drops them.
    """
    try:
        kind = TagsetKind(tagset_kind)
    except ValueError:
        raise ValueError(
            f"unknown tagset kind {tagset_kind!r}; expected one of "
            f"{[k.value for k in TagsetKind]}"
        ) from None
    rows = []
    for src, tgt in pairs:
        pair = SentencePair(tuple(src), tuple(tgt))
        labeled = label_pair(
            pair, kind, speller=speller, engine=engine, verb_forms=verb_forms
        )
        out = _apply_tags(
            labeled.source,
            labeled.tags,
            speller if kind.has_spell else None,
            engine if kind.has_inflect else None,
            verb_forms,
        )
        if tuple(out) != pair.target:
            continue
        rows.append(
            CorpusRow(
                src=labeled.source,
                tags=tuple(format_tag(t) for t in labeled.tags),
            )
        )
    return rows


def rows_to_jsonl(rows: Iterable[CorpusRow]) -> str:
    """Canonical serialisation: compact JSON, fixed key order, one row
    per line.  Used for golden-file comparisons against the CLI."""
    return "".join(
        json.dumps(
            {"src": list(r.src), "tags": list(r.tags)},
            ensure_ascii=False,
            separators=(",", ":"),
        )
        + "\n"
        for r in rows
    )


def apply_edits(
    src: Sequence[str],
    tags: Sequence[str],
    speller: SpellDictionary | None = None,
    engine: InflectionEngine | None = None,
    verb_forms: VerbFormTable | None = None,
) -> list[str]:
    """Apply canonical tag strings to tokens; identical to CLI ``apply``."""
    parsed = [parse_tag(t) for t in tags]
    return _apply_tags(src, parsed, speller, engine, verb_forms)


def vote(
    source: Sequence[str],
    system_outputs: Sequence[Sequence[str]],
    min_votes: int | None = None,
) -> list[str]:
    """Span-based ensemble voting; identical to CLI ``ensemble``."""
    return _vote(source, system_outputs, min_votes)


def score(
    hypotheses: Sequence[Sequence[str] | str],
    m2_text: str,
    beta: float = 0.5,
) -> dict:
    """Span-based scores against gold M2 text; identical to CLI ``score``.

    Hypothesis sentences may be token lists or whitespace-joined strings.
    """
    tokenised = [
        h.split() if isinstance(h, str) else list(h) for h in hypotheses
    ]
    gold = parse_m2(m2_text)
    return _score_corpus(tokenised, gold, beta=beta).as_dict()
