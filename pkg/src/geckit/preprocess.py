"""Turn parallel sentence pairs into labeled sentences and tag vocabularies.

The pipeline is: align source/target tokens, emit one base-tagset tag per
source token (a synthetic ``$START`` token is prepended to carry
insertions before the first word), then optionally rewrite tags for the
extended tagsets:

* spell rewrite: a ``$REPLACE_t`` whose source token the speller corrects
  to exactly ``t`` becomes ``$SPELL``;
* inflect rewrite: the singular/plural and verb-form transforms are
  re-expressed (or demoted to ``$REPLACE``), and any ``$REPLACE_t``
  reachable by inflecting the source token becomes ``$INFLECT_POS``.

The master invariant: applying a sentence's tags to its source reproduces
its target, before and after every rewrite.  Pairs too dense for one tag
per token are dropped by the corpus pipeline with a counted warning.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator

from .align import OpKind, token_diff
from .apply import _apply_case, apply_tags
from .corpus import LabeledSentence
from .errors import DataError
from .inflect import InflectionEngine, VerbFormTable
from .speller import SpellDictionary
from .tags import (
    Append,
    Case,
    CaseKind,
    DELETE,
    EditTag,
    Inflect,
    KEEP,
    Keep,
    Merge,
    MergeKind,
    NounNumber,
    NumberKind,
    PtbPos,
    Replace,
    SPELL,
    SPLIT_HYPHEN,
    START_TOKEN,
    VERB_FORM_CODES,
    VerbForm,
    CoarsePos,
    check_token,
)
from .vocab import TagsetKind, TagVocabulary, closed_class_tags, tag_allowed


@dataclass(frozen=True)
class SentencePair:
    source: tuple[str, ...]
    target: tuple[str, ...]

    def __post_init__(self) -> None:
        for tok in self.source + self.target:
            check_token(tok)


def _case_transform(src: str, tgt: str) -> Case | None:
    for kind in CaseKind:
        if _apply_case(src, kind) == tgt:
            return Case(kind)
    return None


def _noun_number_transform(src: str, tgt: str) -> NounNumber | None:
    if src + "s" == tgt:
        return NounNumber(NumberKind.PLURAL)
    if src.endswith("s") and len(src) > 1 and src[:-1] == tgt:
        return NounNumber(NumberKind.SINGULAR)
    return None


def _verb_form_codes_of(word: str, lemma: str, table: VerbFormTable) -> list[PtbPos]:
    codes = []
    for code in VERB_FORM_CODES:
        if code is PtbPos.VB:
            if word == lemma:
                codes.append(code)
            continue
        forms = table.lexicon.forms_of.get((lemma, code))
        if forms and word in forms:
            codes.append(code)
    return codes


def _verb_form_transform(
    src: str, tgt: str, table: VerbFormTable | None
) -> VerbForm | None:
    if table is None:
        return None
    lowered = src.lower()
    lemma = table.lexicon.lemma_of.get((lowered, CoarsePos.VERB))
    if lemma is None:
        return None
    tgt_lemma = table.lexicon.lemma_of.get((tgt.lower(), CoarsePos.VERB))
    if tgt_lemma != lemma:
        return None
    for src_code in _verb_form_codes_of(lowered, lemma, table):
        for dst_code in _verb_form_codes_of(tgt.lower(), lemma, table):
            if src_code == dst_code:
                continue
            # only usable if the dictionary's preferred form round-trips
            if table.convert(src, src_code, dst_code) == tgt:
                return VerbForm(src_code, dst_code)
    return None


def _g_transform(
    src: str, tgt: str, verb_forms: VerbFormTable | None
) -> EditTag | None:
    """Prefer a grammatical transform over a plain REPLACE when one
    reproduces the target token exactly."""
    tag = _case_transform(src, tgt)
    if tag is not None:
        return tag
    tag = _noun_number_transform(src, tgt)
    if tag is not None:
        return tag
    return _verb_form_transform(src, tgt, verb_forms)


def align_and_tag(
    pair: SentencePair, verb_forms: VerbFormTable | None = None
) -> LabeledSentence:
    """Best-effort single-tag-per-token labeling of a sentence pair.

    The output source starts with ``$START``.  Pairs needing more than
    one edit on a token may not round-trip; callers that require the
    round-trip guarantee must check ``apply_tags`` output against the
    stored target (the corpus pipeline does, and drops failures).
    """
    src, tgt = list(pair.source), list(pair.target)
    # runs[i]: target tokens aligned to extended-source position i
    # (0 = $START); deleted[i]: token i aligned to nothing at all
    runs: list[list[str]] = [[] for _ in range(len(src) + 1)]
    owned: list[bool] = [False] * (len(src) + 1)
    for op in token_diff(src, tgt):
        if op.kind is OpKind.INSERT:
            runs[op.src_index].append(tgt[op.tgt_index])
        elif op.kind is OpKind.DELETE:
            owned[op.src_index + 1] = True
        else:
            runs[op.src_index + 1].append(tgt[op.tgt_index])
            owned[op.src_index + 1] = True

    tags: list[EditTag | None] = [None] * (len(src) + 1)

    # Merge detection: one replaced token followed by deleted tokens whose
    # concatenation equals the replacement.
    i = 1
    while i <= len(src):
        if len(runs[i]) == 1 and runs[i][0] != src[i - 1]:
            t = runs[i][0]
            j = i + 1
            parts = [src[i - 1]]
            while j <= len(src) and not runs[j] and owned[j]:
                parts.append(src[j - 1])
                if "".join(parts) == t:
                    sep = MergeKind.SPACE
                elif "-".join(parts) == t:
                    sep = MergeKind.HYPHEN
                else:
                    j += 1
                    continue
                for k in range(i, j):
                    tags[k] = Merge(sep)
                tags[j] = KEEP
                i = j
                break
            i += 1
        else:
            i += 1

    ext_src = [START_TOKEN] + src
    for i, run in enumerate(runs):
        if tags[i] is not None:
            continue
        if i == 0:
            tags[0] = Append(run[0]) if run else KEEP
            continue
        token = ext_src[i]
        if not run:
            tags[i] = DELETE
        elif run[0] == token:
            tags[i] = Append(run[1]) if len(run) > 1 else KEEP
        elif len(run) > 1 and run == [p for p in token.split("-") if p]:
            tags[i] = SPLIT_HYPHEN
        else:
            tags[i] = _g_transform(token, run[0], verb_forms) or Replace(run[0])

    return LabeledSentence(
        source=tuple(ext_src),
        tags=tuple(tags),  # type: ignore[arg-type]
        target=tuple(tgt),
    )


def rewrite_spell(
    labeled: LabeledSentence, dictionary: SpellDictionary
) -> LabeledSentence:
    """REPLACE -> SPELL wherever the speller reproduces the replacement."""
    new_tags = list(labeled.tags)
    for i, tag in enumerate(labeled.tags):
        if not isinstance(tag, Replace):
            continue
        hit = dictionary.correct(labeled.source[i])
        if hit is not None and hit.word == tag.word:
            new_tags[i] = SPELL
    return LabeledSentence(labeled.source, tuple(new_tags), labeled.target)


def _g_transform_output(token: str, tag: EditTag) -> str:
    if isinstance(tag, NounNumber):
        if tag.kind is NumberKind.PLURAL:
            return token + "s"
        return token[:-1] if token.endswith("s") and len(token) > 1 else token
    raise AssertionError(f"not an inflection transform: {tag!r}")


def rewrite_inflect(
    labeled: LabeledSentence,
    engine: InflectionEngine,
    verb_forms: VerbFormTable | None = None,
) -> LabeledSentence:
    """Re-express inflection-like edits with the generic inflection tag.

    The base tagset's singular/plural and verb-form transforms are
    removed: each becomes ``$INFLECT_POS`` when the engine can reproduce
    its output, otherwise a plain ``$REPLACE``.  Then every remaining
    ``$REPLACE_t`` reachable by inflection becomes ``$INFLECT_POS``.
    """
    new_tags = list(labeled.tags)
    for i, tag in enumerate(labeled.tags):
        token = labeled.source[i]
        if isinstance(tag, (NounNumber, VerbForm)):
            if isinstance(tag, VerbForm):
                out = (
                    verb_forms.convert(token, tag.src, tag.dst)
                    if verb_forms is not None
                    else None
                )
                target_word = out if out is not None else token
            else:
                target_word = _g_transform_output(token, tag)
            pos = engine.can_inflect_to(token, target_word)
            if pos is not None:
                new_tags[i] = Inflect(pos)
            else:
                new_tags[i] = Replace(target_word)
        elif isinstance(tag, Replace):
            pos = engine.can_inflect_to(token, tag.word)
            if pos is not None:
                new_tags[i] = Inflect(pos)
    return LabeledSentence(labeled.source, tuple(new_tags), labeled.target)


@dataclass
class PreprocessReport:
    sentences: int = 0
    dropped: int = 0

    @property
    def kept(self) -> int:
        return self.sentences - self.dropped


def label_pair(
    pair: SentencePair,
    kind: TagsetKind,
    speller: SpellDictionary | None = None,
    engine: InflectionEngine | None = None,
    verb_forms: VerbFormTable | None = None,
) -> LabeledSentence:
    """align_and_tag plus the rewrites the tagset kind calls for."""
    labeled = align_and_tag(pair, verb_forms)
    if kind.has_spell:
        if speller is None:
            raise DataError(f"tagset {kind.value} needs a spelling dictionary")
        labeled = rewrite_spell(labeled, speller)
    if kind.has_inflect:
        if engine is None:
            raise DataError(f"tagset {kind.value} needs an inflection lexicon")
        labeled = rewrite_inflect(labeled, engine, verb_forms)
    return labeled


def _round_trips(
    labeled: LabeledSentence,
    speller: SpellDictionary | None,
    engine: InflectionEngine | None,
    verb_forms: VerbFormTable | None,
) -> bool:
    assert labeled.target is not None
    out = apply_tags(labeled.source, labeled.tags, speller, engine, verb_forms)
    return tuple(out) == labeled.target


def preprocess_pairs(
    pairs: Iterable[SentencePair],
    kind: TagsetKind,
    speller: SpellDictionary | None = None,
    engine: InflectionEngine | None = None,
    verb_forms: VerbFormTable | None = None,
    threads: int = 1,
) -> tuple[list[LabeledSentence], PreprocessReport]:
    """Label a corpus, keeping only sentences whose tags round-trip."""
    work: Callable[[SentencePair], LabeledSentence] = lambda p: label_pair(
        p, kind, speller, engine, verb_forms
    )
    pairs = list(pairs)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            labeled = list(pool.map(work, pairs))
    else:
        labeled = [work(p) for p in pairs]

    report = PreprocessReport(sentences=len(labeled))
    kept = []
    for sent in labeled:
        if _round_trips(sent, speller, engine, verb_forms):
            kept.append(sent)
        else:
            report.dropped += 1
    return kept, report


def read_parallel(
    src_path: str | Path, tgt_path: str | Path
) -> Iterator[SentencePair]:
    """Read aligned one-sentence-per-line token files."""
    with open(src_path, encoding="utf-8") as fs, open(
        tgt_path, encoding="utf-8"
    ) as ft:
        for lineno, (ls, lt) in enumerate(zip(fs, ft), start=1):
            yield SentencePair(tuple(ls.split()), tuple(lt.split()))
        if fs.readline() or ft.readline():
            raise DataError(
                f"{src_path} and {tgt_path} have different line counts"
            )


@dataclass
class VocabBuildReport:
    tag_counts: Counter
    kept: TagVocabulary
    coverage: float


def build_vocabulary(
    corpus: Iterable[LabeledSentence],
    kind: TagsetKind,
    size_limit: int,
) -> VocabBuildReport:
    """Count tags and keep the most frequent within the size limit.

    Closed-class tags are always kept; open-class APPEND/REPLACE tags are
    ranked by frequency (ties broken by tag string) and truncated.
    Coverage is the fraction of non-KEEP edit instances whose tag made it
    into the vocabulary (vacuously 1.0 on an edit-free corpus).
    """
    closed = closed_class_tags(kind)
    if size_limit < len(closed):
        raise DataError(
            f"size limit {size_limit} below the {len(closed)} closed-class tags"
        )
    counts: Counter = Counter()
    for sent in corpus:
        for tag in sent.tags:
            if not tag_allowed(tag, kind):
                raise DataError(
                    f"corpus tag {tag} is illegal in tagset {kind.value}"
                )
            counts[tag] += 1

    open_tags = [
        t for t in counts if isinstance(t, (Append, Replace))
    ]
    open_tags.sort(key=lambda t: (-counts[t], str(t)))
    entries = list(closed) + open_tags[: size_limit - len(closed)]
    vocab = TagVocabulary(kind=kind, entries=tuple(entries), size_limit=size_limit)

    edits = sum(n for t, n in counts.items() if not isinstance(t, Keep))
    covered = sum(
        n
        for t, n in counts.items()
        if not isinstance(t, Keep) and t in vocab
    )
    coverage = covered / edits if edits else 1.0
    return VocabBuildReport(tag_counts=counts, kept=vocab, coverage=coverage)
