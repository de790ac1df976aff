"""Span-based precision/recall/F-beta scoring against M2 gold edits.

Hypothesis edits are extracted as token spans from (source, corrected)
pairs and matched to gold spans by exact boundaries and replacement.
With several annotators, each sentence is scored against the annotator
that flatters the hypothesis most (highest TP, then fewest FP, then
fewest FN), which mirrors how the public span-based GEC scorers behave.

Conventions (documented, used consistently): with no hypothesis edits,
precision is 1.0 when there is nothing to find and 0.0 otherwise; recall
mirrors that; F-beta is 0.0 when its denominator vanishes.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .ensemble import EditSpan, extract_spans, make_span, apply_spans
from .errors import DataError

# Error category targeted by the spelling tag, and the categories related
# to inflection, as labelled in the public GEC annotation scheme.
SPELLING_ERROR_CATEGORY = "SPELL"
INFLECTION_ERROR_CATEGORIES = frozenset(
    {
        "ADJ:FORM",
        "MORPH",
        "NOUN:INFL",
        "NOUN:NUM",
        "VERB:FORM",
        "VERB:INFL",
        "VERB:SVA",
        "VERB:TENSE",
    }
)

FP_CATEGORY = "UNK"  # hypothesis-only edits carry no gold label

_NONE_FIELD = "-NONE-"


class M2ParseError(DataError):
    pass


@dataclass(frozen=True)
class GoldSentence:
    """Source tokens plus per-annotator gold edit spans."""

    source: tuple[str, ...]
    annotations: Mapping[int, tuple[EditSpan, ...]]

    def annotators(self) -> list[int]:
        return sorted(self.annotations)

    def target(self, annotator: int = 0) -> list[str]:
        """Corrected tokens under one annotator's edits."""
        edits = self.annotations.get(annotator, ())
        return apply_spans(self.source, edits)


def category_suffix(label: str) -> str:
    """Strip the operation prefix of an error label (R:SPELL -> SPELL)."""
    if len(label) > 2 and label[1] == ":" and label[0] in "MRU":
        return label[2:]
    return label


def parse_m2(text: str, path: str = "<m2>") -> list[GoldSentence]:
    sentences: list[GoldSentence] = []
    source: tuple[str, ...] | None = None
    edits: dict[int, list[EditSpan]] = {}
    start_line = 0

    def flush(lineno: int) -> None:
        nonlocal source, edits
        if source is None:
            if edits:
                raise M2ParseError(f"{path}:{lineno}: A-lines before any S-line")
            return
        annotations = {a: tuple(_check_sorted(es, path, start_line)) for a, es in edits.items()}
        if not annotations:
            annotations = {0: ()}
        sentences.append(GoldSentence(source=source, annotations=annotations))
        source = None
        edits = {}

    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip()
        if not line:
            flush(lineno)
            continue
        if line.startswith("S ") or line == "S":
            flush(lineno)
            source = tuple(line[2:].split())
            start_line = lineno
            continue
        if line.startswith("A "):
            if source is None:
                raise M2ParseError(f"{path}:{lineno}: A-line before S-line")
            fields = line[2:].split("|||")
            if len(fields) < 6:
                raise M2ParseError(
                    f"{path}:{lineno}: expected 6 |||-separated fields"
                )
            span_part, category, replacement = fields[0], fields[1], fields[2]
            try:
                annotator = int(fields[-1])
            except ValueError:
                raise M2ParseError(
                    f"{path}:{lineno}: bad annotator id {fields[-1]!r}"
                ) from None
            try:
                start_s, end_s = span_part.split()
                start, end = int(start_s), int(end_s)
            except ValueError:
                raise M2ParseError(
                    f"{path}:{lineno}: bad span {span_part!r}"
                ) from None
            bucket = edits.setdefault(annotator, [])
            if category == "noop" or (start, end) == (-1, -1):
                continue  # registers the annotator with no edits
            if not (0 <= start <= end <= len(source)):
                raise M2ParseError(
                    f"{path}:{lineno}: span [{start},{end}) outside sentence"
                )
            repl = (
                tuple(replacement.split())
                if replacement and replacement != _NONE_FIELD
                else ()
            )
            if start == end and not repl:
                raise M2ParseError(
                    f"{path}:{lineno}: empty span with empty replacement"
                )
            bucket.append(make_span(start, end, repl, category))
            continue
        raise M2ParseError(f"{path}:{lineno}: unrecognised line {line!r}")
    flush(-1)
    return sentences


def _check_sorted(
    edits: list[EditSpan], path: str, lineno: int
) -> list[EditSpan]:
    ordered = sorted(edits, key=lambda s: (s.start, s.end))
    pos = 0
    for e in ordered:
        if e.start < pos:
            raise M2ParseError(
                f"{path}:{lineno}: overlapping gold edits for one annotator"
            )
        pos = e.end
    return ordered


def load_m2(path: str | Path) -> list[GoldSentence]:
    with open(path, encoding="utf-8") as f:
        return parse_m2(f.read(), str(path))


def format_m2(sentence: GoldSentence) -> str:
    """Serialise one sentence back to M2 text."""
    lines = ["S " + " ".join(sentence.source)]
    for annotator in sentence.annotators():
        edits = sentence.annotations[annotator]
        if not edits:
            lines.append(
                f"A -1 -1|||noop|||{_NONE_FIELD}|||REQUIRED|||{_NONE_FIELD}|||{annotator}"
            )
        for e in edits:
            repl = " ".join(e.replacement) if e.replacement else _NONE_FIELD
            category = e.category or FP_CATEGORY
            lines.append(
                f"A {e.start} {e.end}|||{category}|||{repl}|||REQUIRED|||{_NONE_FIELD}|||{annotator}"
            )
    return "\n".join(lines) + "\n"


def fbeta(precision: float, recall: float, beta: float = 0.5) -> float:
    """F-beta from precision and recall; 0.0 when both are 0."""
    b2 = beta * beta
    denom = b2 * precision + recall
    if denom == 0:
        return 0.0
    return (1 + b2) * precision * recall / denom


def _precision(tp: int, fp: int, fn: int) -> float:
    if tp + fp > 0:
        return tp / (tp + fp)
    return 1.0 if fn == 0 else 0.0


def _recall(tp: int, fp: int, fn: int) -> float:
    if tp + fn > 0:
        return tp / (tp + fn)
    return 1.0 if fp == 0 else 0.0


@dataclass
class CategoryCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def precision(self) -> float:
        return _precision(self.tp, self.fp, self.fn)

    @property
    def recall(self) -> float:
        return _recall(self.tp, self.fp, self.fn)

    def f_beta(self, beta: float = 0.5) -> float:
        return fbeta(self.precision, self.recall, beta)


@dataclass
class ScoreReport:
    tp: int
    fp: int
    fn: int
    beta: float
    per_category: dict[str, CategoryCounts] = field(default_factory=dict)

    @property
    def precision(self) -> float:
        return _precision(self.tp, self.fp, self.fn)

    @property
    def recall(self) -> float:
        return _recall(self.tp, self.fp, self.fn)

    @property
    def f_beta(self) -> float:
        return fbeta(self.precision, self.recall, self.beta)

    def filtered(self, categories: Iterable[str]) -> "ScoreReport":
        """Report restricted to the given categories (raw label or its
        prefix-stripped form both match)."""
        wanted = set(categories)

        def hit(label: str) -> bool:
            return label in wanted or category_suffix(label) in wanted

        out = ScoreReport(0, 0, 0, self.beta)
        for label, c in self.per_category.items():
            if hit(label):
                out.per_category[label] = c
                out.tp += c.tp
                out.fp += c.fp
                out.fn += c.fn
        return out

    def as_dict(self) -> dict:
        return {
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "precision": self.precision,
            "recall": self.recall,
            "f_beta": self.f_beta,
            "beta": self.beta,
            "per_category": {
                label: {
                    "tp": c.tp,
                    "fp": c.fp,
                    "fn": c.fn,
                    "precision": c.precision,
                    "recall": c.recall,
                    "f_beta": c.f_beta(self.beta),
                }
                for label, c in sorted(self.per_category.items())
            },
        }


@dataclass
class SentenceScore:
    annotator: int
    tp: int
    fp: int
    fn: int
    per_category: dict[str, CategoryCounts]


def score_sentence(
    hyp_spans: Sequence[EditSpan], gold: GoldSentence
) -> SentenceScore:
    """Match hypothesis spans to the most favourable annotator's edits."""
    hyp_sigs = [s.signature for s in hyp_spans]
    best: SentenceScore | None = None
    for annotator in gold.annotators():
        gold_edits = gold.annotations[annotator]
        gold_by_sig = {e.signature: e for e in gold_edits}
        per_cat: dict[str, CategoryCounts] = {}
        tp = fp = 0
        matched = set()
        for sig in hyp_sigs:
            edit = gold_by_sig.get(sig)
            if edit is not None:
                tp += 1
                matched.add(sig)
                label = edit.category or FP_CATEGORY
                per_cat.setdefault(label, CategoryCounts()).tp += 1
            else:
                fp += 1
                per_cat.setdefault(FP_CATEGORY, CategoryCounts()).fp += 1
        fn = 0
        for edit in gold_edits:
            if edit.signature not in matched:
                fn += 1
                label = edit.category or FP_CATEGORY
                per_cat.setdefault(label, CategoryCounts()).fn += 1
        cand = SentenceScore(annotator, tp, fp, fn, per_cat)
        if best is None or (cand.tp, -cand.fp, -cand.fn) > (
            best.tp,
            -best.fp,
            -best.fn,
        ):
            best = cand
    assert best is not None  # parser guarantees at least annotator 0
    return best


def score_corpus(
    hypotheses: Sequence[Sequence[str]],
    gold: Sequence[GoldSentence],
    beta: float = 0.5,
) -> ScoreReport:
    """Micro-aggregated span scores for a corpus of corrected sentences."""
    if len(hypotheses) != len(gold):
        raise DataError(
            f"{len(hypotheses)} hypothesis sentences vs {len(gold)} gold"
        )
    report = ScoreReport(0, 0, 0, beta)
    for hyp, g in zip(hypotheses, gold):
        spans = extract_spans(g.source, hyp)
        s = score_sentence(spans, g)
        report.tp += s.tp
        report.fp += s.fp
        report.fn += s.fn
        for label, c in s.per_category.items():
            agg = report.per_category.setdefault(label, CategoryCounts())
            agg.tp += c.tp
            agg.fp += c.fp
            agg.fn += c.fn
    return report


@dataclass(frozen=True)
class AggregateReport:
    mean: float
    std: float
    n_seeds: int


def aggregate(scores: Sequence[float]) -> AggregateReport:
    """Mean and sample (n-1) standard deviation; std 0.0 for one value."""
    if not scores:
        raise DataError("nothing to aggregate")
    mean = statistics.fmean(scores)
    std = statistics.stdev(scores) if len(scores) > 1 else 0.0
    return AggregateReport(mean=mean, std=std, n_seeds=len(scores))
