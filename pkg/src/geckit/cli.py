"""Command-line entry point wiring all toolkit stages together.

Subcommands: preprocess, apply, infer, tune, ensemble, score, stats.
Every run prints a JSON report (schema 1) to stdout; artefacts go to the
paths given by ``-o``/``--csv``.  Exit codes: 0 success, 1 usage error,
2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .apply import apply_tags, detokenize
from .corpus import read_labeled_jsonl, write_labeled_jsonl
from .data import default_dictionary_path, default_lexicon_path
from .ensemble import vote_detailed
from .errors import ContractViolation, DataError
from .infer import (
    GRID_VALUES,
    InferenceTweaks,
    grid_search,
    read_distributions,
    select_tags,
)
from .inflect import InflectionEngine, VerbFormTable, load_lexicon
from .preprocess import (
    SentencePair,
    build_vocabulary,
    preprocess_pairs,
    read_parallel,
)
from .score import load_m2, score_corpus
from .speller import SpellDictionary, load_frequency_dictionary
from .tags import Inflect, Spell, START_TOKEN, TagError, VerbForm, format_tag
from .vocab import TagsetKind, TagVocabulary


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _read_token_lines(path: str | Path) -> list[list[str]]:
    with open(path, encoding="utf-8") as f:
        return [line.split() for line in f.read().splitlines()]


def _write_token_lines(path: str | Path, sentences: list[list[str]]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for tokens in sentences:
            f.write(detokenize(tokens) + "\n")


class Resources:
    """Lazily loaded dictionary/lexicon bundle shared by subcommands."""

    def __init__(self, args: argparse.Namespace) -> None:
        self._dict_path = Path(args.dict) if getattr(args, "dict", None) else default_dictionary_path()
        self._lex_path = Path(args.lexicon) if getattr(args, "lexicon", None) else default_lexicon_path()
        self._verbs_path = Path(args.verbs) if getattr(args, "verbs", None) else self._lex_path
        self._speller: SpellDictionary | None = None
        self._engine: InflectionEngine | None = None
        self._verb_forms: VerbFormTable | None = None

    @property
    def speller(self) -> SpellDictionary:
        if self._speller is None:
            self._speller = load_frequency_dictionary(self._dict_path)
        return self._speller

    @property
    def engine(self) -> InflectionEngine:
        if self._engine is None:
            self._engine = InflectionEngine(load_lexicon(self._lex_path))
        return self._engine

    @property
    def verb_forms(self) -> VerbFormTable:
        if self._verb_forms is None:
            self._verb_forms = VerbFormTable.from_file(self._verbs_path)
        return self._verb_forms

    def for_tags(self, sentences) -> tuple:
        """(speller, engine, verb_forms) loading only what the tags use."""
        need_spell = need_inflect = need_verbs = False
        for s in sentences:
            for t in s.tags:
                if isinstance(t, Spell):
                    need_spell = True
                elif isinstance(t, Inflect):
                    need_inflect = True
                elif isinstance(t, VerbForm):
                    need_verbs = True
        return (
            self.speller if need_spell else None,
            self.engine if need_inflect else None,
            self.verb_forms if need_verbs else None,
        )


def _add_resource_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dict", help="frequency dictionary (word<SPACE>count per line)")
    p.add_argument("--lexicon", help="inflection lexicon TSV")
    p.add_argument("--verbs", help="verb-form dictionary TSV (default: the lexicon)")


def _emit_report(args: argparse.Namespace, report: dict) -> None:
    report = {"schema": 1, **report}
    text = json.dumps(report, indent=2, sort_keys=False)
    print(text)
    if getattr(args, "report", None):
        Path(args.report).write_text(text + "\n", encoding="utf-8")


def cmd_preprocess(args: argparse.Namespace) -> dict:
    kind = TagsetKind(args.tagset)
    res = Resources(args)
    if args.m2:
        gold = load_m2(args.m2)
        pairs = [
            SentencePair(g.source, tuple(g.target(args.annotator)))
            for g in gold
        ]
    else:
        if not (args.src and args.tgt):
            raise UsageError("need --src and --tgt, or --m2")
        pairs = list(read_parallel(args.src, args.tgt))

    speller = res.speller if kind.has_spell else None
    engine = res.engine if kind.has_inflect else None
    labeled, rep = preprocess_pairs(
        pairs,
        kind,
        speller=speller,
        engine=engine,
        verb_forms=res.verb_forms,
        threads=args.threads,
    )
    write_labeled_jsonl(args.output, labeled)
    report = {
        "command": "preprocess",
        "tagset": kind.value,
        "sentences": rep.sentences,
        "kept": rep.kept,
        "dropped": rep.dropped,
        "warnings": rep.dropped,
        "output": str(args.output),
    }
    if args.vocab_out:
        vb = build_vocabulary(labeled, kind, args.vocab_size)
        vb.kept.save(args.vocab_out)
        report["vocab_out"] = str(args.vocab_out)
        report["vocab_size"] = len(vb.kept)
        report["distinct_tags"] = len(vb.tag_counts)
        report["coverage"] = vb.coverage
    return report


def cmd_apply(args: argparse.Namespace) -> dict:
    res = Resources(args)
    sentences = list(read_labeled_jsonl(args.input))
    speller, engine, verb_forms = res.for_tags(sentences)
    out = [
        apply_tags(s.source, s.tags, speller, engine, verb_forms)
        for s in sentences
    ]
    _write_token_lines(args.output, out)
    return {
        "command": "apply",
        "sentences": len(out),
        "warnings": 0,
        "output": str(args.output),
    }


def _load_infer_inputs(args: argparse.Namespace, vocab: TagVocabulary):
    sources = _read_token_lines(args.source)
    dists = list(read_distributions(args.distributions))
    if len(dists) != len(sources):
        raise DataError(
            f"{len(sources)} sentences but {len(dists)} distributions"
        )
    for i, (tokens, dist) in enumerate(zip(sources, dists), start=1):
        if len(dist) != len(tokens) + 1:
            raise DataError(
                f"sentence {i}: {len(dist)} distribution rows for "
                f"{len(tokens)} tokens (expected one per token plus {START_TOKEN})"
            )
        if dist.probs.shape[1] != len(vocab):
            raise DataError(
                f"sentence {i}: distribution width {dist.probs.shape[1]} "
                f"!= vocabulary size {len(vocab)}"
            )
    return sources, dists


def cmd_infer(args: argparse.Namespace) -> dict:
    vocab = TagVocabulary.load(args.vocab)
    res = Resources(args)
    sources, dists = _load_infer_inputs(args, vocab)
    tweaks = InferenceTweaks(args.cb, args.mep)
    speller = res.speller if vocab.kind.has_spell else None
    engine = res.engine if vocab.kind.has_inflect else None
    verb_forms = res.verb_forms if not vocab.kind.has_inflect else None
    changed = 0
    out = []
    for tokens, dist in zip(sources, dists):
        extended = [START_TOKEN] + tokens
        tags = select_tags(dist, vocab, tweaks)
        corrected = apply_tags(extended, tags, speller, engine, verb_forms)
        if corrected != tokens:
            changed += 1
        out.append(corrected)
    _write_token_lines(args.output, out)
    return {
        "command": "infer",
        "sentences": len(out),
        "changed": changed,
        "confidence_bias": args.cb,
        "min_error_prob": args.mep,
        "warnings": 0,
        "output": str(args.output),
    }


def cmd_tune(args: argparse.Namespace) -> dict:
    vocab = TagVocabulary.load(args.vocab)
    res = Resources(args)
    src_path, m2_path = args.dev
    gold = load_m2(m2_path)
    args.source = src_path
    sources, dists = _load_infer_inputs(args, vocab)
    if len(gold) != len(sources):
        raise DataError(f"{len(sources)} sentences but {len(gold)} gold entries")
    for i, (tokens, g) in enumerate(zip(sources, gold), start=1):
        if tuple(tokens) != g.source:
            raise DataError(f"sentence {i}: source text and gold S-line differ")
    speller = res.speller if vocab.kind.has_spell else None
    engine = res.engine if vocab.kind.has_inflect else None
    verb_forms = res.verb_forms if not vocab.kind.has_inflect else None
    best, cells = grid_search(
        sources,
        dists,
        vocab,
        gold,
        beta=args.beta,
        speller=speller,
        inflector=engine,
        verb_forms=verb_forms,
    )
    with open(args.csv, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(
            ["confidence_bias", "min_error_prob", "precision", "recall", "f_beta"]
        )
        for c in cells:
            writer.writerow(
                [
                    f"{c.confidence_bias:.2f}",
                    f"{c.min_error_prob:.2f}",
                    f"{c.precision:.6f}",
                    f"{c.recall:.6f}",
                    f"{c.f_beta:.6f}",
                ]
            )
    return {
        "command": "tune",
        "cells": len(cells),
        "grid_values": len(GRID_VALUES),
        "best_confidence_bias": best.confidence_bias,
        "best_min_error_prob": best.min_error_prob,
        "best_f_beta": max(c.f_beta for c in cells),
        "warnings": 0,
        "csv": str(args.csv),
    }


def cmd_ensemble(args: argparse.Namespace) -> dict:
    sources = _read_token_lines(args.source)
    systems = [_read_token_lines(p) for p in args.hyp]
    for p, s in zip(args.hyp, systems):
        if len(s) != len(sources):
            raise DataError(f"{p}: {len(s)} lines, expected {len(sources)}")
    out = []
    conflicts = 0
    for i, src in enumerate(sources):
        outcome = vote_detailed(src, [s[i] for s in systems], args.threshold)
        out.append(outcome.tokens)
        conflicts += outcome.dropped_conflicts
    _write_token_lines(args.output, out)
    return {
        "command": "ensemble",
        "sentences": len(out),
        "systems": len(systems),
        "threshold": args.threshold if args.threshold is not None else len(systems) - 1,
        "dropped_conflicts": conflicts,
        "warnings": conflicts,
        "output": str(args.output),
    }


def cmd_score(args: argparse.Namespace) -> dict:
    gold = load_m2(args.gold)
    hyps = _read_token_lines(args.hyp)
    report = score_corpus(hyps, gold, beta=args.beta)
    if args.categories:
        report = report.filtered(args.categories.split(","))
    if args.category_csv:
        with open(args.category_csv, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["category", "tp", "fp", "fn", "precision", "recall", "f_beta"])
            for label, c in sorted(report.per_category.items()):
                writer.writerow(
                    [label, c.tp, c.fp, c.fn,
                     f"{c.precision:.6f}", f"{c.recall:.6f}", f"{c.f_beta(args.beta):.6f}"]
                )
    return {"command": "score", "sentences": len(hyps), "warnings": 0, **report.as_dict()}


def cmd_stats(args: argparse.Namespace) -> dict:
    res = Resources(args)
    sentences = list(read_labeled_jsonl(args.input))
    speller, engine, verb_forms = res.for_tags(sentences)
    counts: dict[str, int] = {}
    failures = 0
    unchecked = 0
    for s in sentences:
        for t in s.tags:
            key = format_tag(t)
            counts[key] = counts.get(key, 0) + 1
        if s.target is None:
            unchecked += 1
        elif tuple(apply_tags(s.source, s.tags, speller, engine, verb_forms)) != s.target:
            failures += 1
    return {
        "command": "stats",
        "sentences": len(sentences),
        "distinct_tags": len(counts),
        "round_trip_failures": failures,
        "round_trip_unchecked": unchecked,
        "warnings": failures,
        "tag_histogram": dict(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="geckit", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="label parallel data with edit tags")
    p.add_argument("--src", help="source side, one tokenised sentence per line")
    p.add_argument("--tgt", help="target side, aligned with --src")
    p.add_argument("--m2", help="gold M2 file (targets built from gold edits)")
    p.add_argument("--annotator", type=int, default=0, help="annotator id for --m2")
    p.add_argument(
        "--tagset",
        required=True,
        choices=[k.value for k in TagsetKind],
    )
    p.add_argument("-o", "--output", required=True, help="labeled JSONL out")
    p.add_argument("--vocab-out", help="also write a tag vocabulary here")
    p.add_argument("--vocab-size", type=int, default=5000)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--report", help="also write the JSON report here")
    _add_resource_flags(p)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("apply", help="apply labeled JSONL tags to their sources")
    p.add_argument("--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--report")
    _add_resource_flags(p)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("infer", help="select and apply tags from distributions")
    p.add_argument("--source", required=True)
    p.add_argument("--distributions", required=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--cb", type=float, default=0.0, help="confidence bias")
    p.add_argument("--mep", type=float, default=0.0, help="minimum error probability")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--report")
    _add_resource_flags(p)
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("tune", help="grid-search the inference tweaks")
    p.add_argument(
        "--dev",
        nargs=2,
        metavar=("SRC", "M2"),
        required=True,
        help="development source text and gold M2",
    )
    p.add_argument("--distributions", required=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--csv", required=True, help="full score table out")
    p.add_argument("--report")
    _add_resource_flags(p)
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("ensemble", help="combine system outputs by span voting")
    p.add_argument("--source", required=True)
    p.add_argument("--hyp", nargs="+", required=True)
    p.add_argument(
        "--threshold",
        type=int,
        default=None,
        help="votes needed to accept a span (default: systems minus 1)",
    )
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("score", help="span-based P/R/F against gold M2")
    p.add_argument("--hyp", required=True, help="corrected text, tokenised")
    p.add_argument("--gold", required=True, help="gold M2 file")
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--categories", help="comma-separated category filter")
    p.add_argument("--category-csv", help="write the per-category table here")
    p.add_argument("--report")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("stats", help="tag histogram and round-trip check")
    p.add_argument("--input", required=True)
    p.add_argument("--report")
    _add_resource_flags(p)
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        report = args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except (DataError, TagError, FileNotFoundError) as e:
        print(f"data error: {e}", file=sys.stderr)
        return 2
    except ContractViolation as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 3
    _emit_report(args, report)
    return 0


if __name__ == "__main__":
    sys.exit(main())
