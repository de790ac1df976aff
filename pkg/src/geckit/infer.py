"""Tag selection from per-token probability distributions.

The toolkit is tagger-agnostic: distributions arrive either from the
JSONL interchange format (one object per sentence with ``probs`` and
``error_probs``) or from an in-process callable.  Row 0 of every
distribution corresponds to the ``$START`` placeholder prepended to the
sentence, so insertions before the first word stay expressible.

Two inference tweaks trade recall for precision: a confidence bias added
to the KEEP probability of every token before the argmax, and a sentence
gate that keeps a sentence unchanged unless some token's error
probability reaches a minimum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator, Sequence

import numpy as np

from .apply import apply_tags
from .errors import ContractViolation, DataError
from .inflect import InflectionEngine, VerbFormTable
from .score import GoldSentence, ScoreReport, score_corpus
from .speller import SpellDictionary
from .tags import EditTag, KEEP, SPELL, START_TOKEN
from .vocab import TagVocabulary

# The tuning grid: 0.00 to 0.90 inclusive in steps of 0.02, both axes.
GRID_VALUES: tuple[float, ...] = tuple(round(0.02 * i, 2) for i in range(46))


@dataclass(frozen=True)
class InferenceTweaks:
    confidence_bias: float = 0.0
    min_error_prob: float = 0.0

    def __post_init__(self) -> None:
        for name, value in (
            ("confidence_bias", self.confidence_bias),
            ("min_error_prob", self.min_error_prob),
        ):
            if not 0.0 <= value <= 0.9:
                raise ContractViolation(f"{name} must be in [0, 0.9], got {value}")


class TagDistribution:
    """Per-token tag probabilities plus per-token error probabilities."""

    def __init__(
        self, probs: np.ndarray | Sequence[Sequence[float]],
        error_probs: np.ndarray | Sequence[float],
    ) -> None:
        self.probs = np.asarray(probs, dtype=np.float64)
        self.error_probs = np.asarray(error_probs, dtype=np.float64)
        if self.probs.ndim != 2:
            raise DataError("probs must be a 2-d matrix")
        if self.error_probs.shape != (self.probs.shape[0],):
            raise DataError("error_probs length must match token count")
        if self.probs.size:
            if self.probs.min() < -1e-9 or self.probs.max() > 1 + 1e-9:
                raise DataError("probabilities must lie in [0, 1]")
            sums = self.probs.sum(axis=1)
            if np.abs(sums - 1.0).max() > 1e-6:
                raise DataError("each probs row must sum to 1 (within 1e-6)")
        if self.error_probs.size and (
            self.error_probs.min() < -1e-9 or self.error_probs.max() > 1 + 1e-9
        ):
            raise DataError("error probabilities must lie in [0, 1]")

    def __len__(self) -> int:
        return self.probs.shape[0]


def keep_biased_argmax(probs: np.ndarray, confidence_bias: float) -> np.ndarray:
    """Row argmax after adding the bias to column 0 (KEEP), without
    renormalising. np.argmax resolves ties toward the lower tag id."""
    if confidence_bias:
        biased = probs.copy()
        biased[:, 0] += confidence_bias
        return biased.argmax(axis=1)
    return probs.argmax(axis=1)


def select_tags(
    dist: TagDistribution,
    vocab: TagVocabulary,
    tweaks: InferenceTweaks = InferenceTweaks(),
) -> list[EditTag]:
    """Pick one tag per token; may gate the whole sentence to KEEP."""
    if dist.probs.shape[1] != len(vocab):
        raise ContractViolation(
            f"distribution width {dist.probs.shape[1]} != vocabulary size {len(vocab)}"
        )
    n = len(dist)
    if n == 0:
        return []
    if dist.error_probs.max() < tweaks.min_error_prob:
        return [KEEP] * n
    ids = keep_biased_argmax(dist.probs, tweaks.confidence_bias)
    return [vocab.tag_at(int(i)) for i in ids]


Tagger = Callable[[Sequence[str]], TagDistribution]


def correct_iteratively(
    tokens: Sequence[str],
    tagger: Tagger,
    vocab: TagVocabulary,
    tweaks: InferenceTweaks = InferenceTweaks(),
    max_iters: int = 4,
    speller: SpellDictionary | None = None,
    inflector: InflectionEngine | None = None,
    verb_forms: VerbFormTable | None = None,
) -> list[str]:
    """Repeat tag-and-apply until a fixed point or the iteration cap.

    The tagger receives the tokens with ``$START`` prepended and must
    return one distribution row per extended token.
    """
    if max_iters < 1:
        raise ContractViolation("max_iters must be >= 1")
    current = list(tokens)
    for _ in range(max_iters):
        extended = [START_TOKEN] + current
        dist = tagger(extended)
        if len(dist) != len(extended):
            raise ContractViolation(
                f"tagger returned {len(dist)} rows for {len(extended)} tokens"
            )
        tags = select_tags(dist, vocab, tweaks)
        corrected = apply_tags(extended, tags, speller, inflector, verb_forms)
        if corrected == current:
            break
        current = corrected
    return current


@dataclass
class BaselineSpellTagger:
    """Dictionary-lookup test double: one-hot SPELL on alphabetic tokens
    missing from the spelling dictionary, KEEP everywhere else."""

    dictionary: SpellDictionary
    vocab: TagVocabulary

    def __call__(self, tokens: Sequence[str]) -> TagDistribution:
        keep_id = self.vocab.id_of(KEEP)
        spell_id = self.vocab.id_of(SPELL) if SPELL in self.vocab else keep_id
        probs = np.zeros((len(tokens), len(self.vocab)))
        errors = np.zeros(len(tokens))
        for i, tok in enumerate(tokens):
            flag = (
                tok != START_TOKEN
                and tok.isalpha()
                and tok.lower() not in self.dictionary
            )
            probs[i, spell_id if flag else keep_id] = 1.0
            errors[i] = 1.0 if flag else 0.0
        return TagDistribution(probs, errors)


def read_distributions(path: str | Path) -> Iterator[TagDistribution]:
    """Read the JSONL interchange format for tag distributions."""
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                yield TagDistribution(obj["probs"], obj["error_probs"])
            except (KeyError, TypeError, ValueError) as e:
                raise DataError(f"{path}:{lineno}: {e}") from None


def write_distributions(
    path: str | Path, dists: Sequence[TagDistribution]
) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for d in dists:
            obj = {
                "probs": [[float(x) for x in row] for row in d.probs],
                "error_probs": [float(x) for x in d.error_probs],
            }
            f.write(json.dumps(obj, separators=(",", ":")) + "\n")


@dataclass(frozen=True)
class GridCell:
    confidence_bias: float
    min_error_prob: float
    precision: float
    recall: float
    f_beta: float


def grid_search(
    sources: Sequence[Sequence[str]],
    distributions: Sequence[TagDistribution],
    vocab: TagVocabulary,
    gold: Sequence[GoldSentence],
    beta: float = 0.5,
    speller: SpellDictionary | None = None,
    inflector: InflectionEngine | None = None,
    verb_forms: VerbFormTable | None = None,
) -> tuple[InferenceTweaks, list[GridCell]]:
    """Evaluate every (confidence bias, min error prob) grid combination.

    Distributions are fixed, so selection is single-pass per cell.  The
    argmax depends only on the bias and the gate only on a sentence's
    maximum error probability; both are precomputed so the full grid
    costs one corpus scoring pass per bias value plus cheap masking.

    Returns the best tweaks (highest F-beta; ties prefer the smaller
    bias, then the smaller gate) and all 2116 cells in grid order.
    """
    if not sources:
        raise DataError("grid search needs a non-empty development set")
    if not (len(sources) == len(distributions) == len(gold)):
        raise DataError("sources, distributions and gold must align")

    # Per sentence: scoring outcome when gated to identity.
    gated = _score_rows(
        [list(s) for s in sources], gold, beta
    )
    max_err = [float(d.error_probs.max()) if len(d) else 0.0 for d in distributions]

    cells: list[GridCell] = []
    best: tuple[float, GridCell] | None = None
    for cb in GRID_VALUES:
        tweaks = InferenceTweaks(confidence_bias=cb)
        corrected = []
        for tokens, dist in zip(sources, distributions):
            extended = [START_TOKEN] + list(tokens)
            tags = select_tags(dist, vocab, tweaks)
            corrected.append(
                apply_tags(extended, tags, speller, inflector, verb_forms)
            )
        ungated = _score_rows(corrected, gold, beta)
        for mep in GRID_VALUES:
            tp = fp = fn = 0
            for i in range(len(sources)):
                row = ungated[i] if max_err[i] >= mep else gated[i]
                tp += row[0]
                fp += row[1]
                fn += row[2]
            report = ScoreReport(tp, fp, fn, beta)
            cell = GridCell(cb, mep, report.precision, report.recall, report.f_beta)
            cells.append(cell)
            if best is None or cell.f_beta > best[0]:
                best = (cell.f_beta, cell)
    assert best is not None
    chosen = best[1]
    return (
        InferenceTweaks(chosen.confidence_bias, chosen.min_error_prob),
        cells,
    )


def _score_rows(
    hypotheses: Sequence[Sequence[str]],
    gold: Sequence[GoldSentence],
    beta: float,
) -> list[tuple[int, int, int]]:
    rows = []
    for hyp, g in zip(hypotheses, gold):
        r = score_corpus([hyp], [g], beta)
        rows.append((r.tp, r.fp, r.fn))
    return rows
