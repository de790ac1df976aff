#!/usr/bin/env python3
"""Derive the shipped word-frequency dictionary and inflection lexicon.

Raw inputs (public word data, fetched once with ``npm pack`` and dumped
to flat files; see --raw):

    words.txt           one word per line            (npm: word-list)
    subtlex.tsv         word<TAB>corpus count        (npm: subtlex-word-frequencies)
    enlexicon.tsv       word<TAB>PTB tags (|-sep)    (npm: en-lexicon)
    irregular_verbs.tsv lemma VBD VBN VBZ VBG        (npm: en-inflectors)
    wn_noun_exc.tsv     plural<TAB>singular(s)       (npm: wink-lexicon)
    wn_adj_exc.tsv      graded<TAB>base(s)           (npm: wink-lexicon)
    uncountable.txt     one uncountable noun per line(npm: wink-lexicon)

Outputs:

    frequency_dictionary.txt   exactly 82,765 ``word<SPACE>count`` lines:
                               every valid word with a corpus count, topped
                               up with tagged dictionary words and then
                               short fillers (count 1) to reach the target
    inflections.tsv            ``lemma<TAB>pos<TAB>form1,form2,...`` rows:
                               irregular verb/noun/adjective tables from
                               the word data, plus regular forms generated
                               with the package's own suffix rules for
                               every tagged lemma in the dictionary
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from geckit.inflect import _ed_form, _ing_form, _s_form  # noqa: E402

TARGET_DICTIONARY_SIZE = 82_765
WORD_RE = re.compile(r"[a-z]+")


def _is_word(w: str) -> bool:
    return bool(WORD_RE.fullmatch(w))


def load_raw(raw: Path):
    # the word list has no single-letter entries; "a" and "i" are real
    # words and must be correctable to themselves, not to longer words
    words = {"a", "i"}
    for line in (raw / "words.txt").read_text().splitlines():
        w = line.strip()
        if _is_word(w):
            words.add(w)

    counts: dict[str, int] = {}
    for line in (raw / "subtlex.tsv").read_text().splitlines():
        w, c = line.split("\t")
        w = w.lower()
        if _is_word(w):
            counts[w] = counts.get(w, 0) + int(c)

    tags: dict[str, set[str]] = {}
    for line in (raw / "enlexicon.tsv").read_text().splitlines():
        w, _, t = line.partition("\t")
        if _is_word(w):
            tags[w] = set(t.split("|"))

    return words, counts, tags


def build_dictionary(words: set[str], counts: dict[str, int], tags: dict[str, set[str]]):
    entries = {w: counts[w] for w in words if w in counts}
    for w in sorted(w for w in words if w in tags and w not in entries):
        entries[w] = 1
    fillers = sorted(
        (w for w in words if w not in entries and 3 <= len(w) <= 20),
        key=lambda w: (len(w), w),
    )
    for w in fillers:
        if len(entries) >= TARGET_DICTIONARY_SIZE:
            break
        entries[w] = 1
    if len(entries) > TARGET_DICTIONARY_SIZE:
        # drop the rarest fillers deterministically
        for w in sorted(entries, key=lambda w: (entries[w], -len(w), w)):
            if len(entries) <= TARGET_DICTIONARY_SIZE:
                break
            if entries[w] == 1:
                del entries[w]
    return entries


def build_lexicon_rows(
    raw: Path,
    dictionary: dict[str, int],
    tags: dict[str, set[str]],
) -> list[tuple[str, str, list[str]]]:
    rows: list[tuple[str, str, list[str]]] = []

    # --- verbs: suppletive "be", then the irregular table, then regulars
    rows.append(("be", "VBD", ["was", "were"]))
    rows.append(("be", "VBZ", ["is"]))
    rows.append(("be", "VBP", ["are", "am"]))
    rows.append(("be", "VBG", ["being"]))
    rows.append(("be", "VBN", ["been"]))

    irregular_lemmas = {"be"}
    for line in (raw / "irregular_verbs.tsv").read_text().splitlines():
        parts = line.split("\t")
        if len(parts) != 5:
            continue
        lemma, vbd, vbn, vbz, vbg = parts
        if not _is_word(lemma) or lemma in irregular_lemmas:
            continue
        irregular_lemmas.add(lemma)
        for pos, form in (("VBD", vbd), ("VBN", vbn), ("VBZ", vbz), ("VBG", vbg)):
            forms = [f for f in form.split("/") if _is_word(f)]
            if forms:
                rows.append((lemma, pos, forms))

    for lemma in sorted(dictionary):
        if lemma in irregular_lemmas or len(lemma) < 2:
            continue
        if "VB" in tags.get(lemma, ()):
            rows.append((lemma, "VBZ", [_s_form(lemma)]))
            rows.append((lemma, "VBD", [_ed_form(lemma)]))
            rows.append((lemma, "VBN", [_ed_form(lemma)]))
            rows.append((lemma, "VBG", [_ing_form(lemma)]))

    # --- nouns: inverted WordNet exception list, then regular plurals
    irregular_plural: dict[str, list[str]] = {}
    for line in (raw / "wn_noun_exc.tsv").read_text().splitlines():
        plural, _, lemmas = line.partition("\t")
        for lemma in lemmas.split(","):
            if _is_word(lemma) and _is_word(plural) and plural != lemma:
                irregular_plural.setdefault(lemma, [])
                if plural not in irregular_plural[lemma]:
                    irregular_plural[lemma].append(plural)
    for lemma in sorted(irregular_plural):
        rows.append((lemma, "NNS", irregular_plural[lemma]))

    uncountable = set(
        w.strip() for w in (raw / "uncountable.txt").read_text().splitlines()
    )
    for lemma in sorted(dictionary):
        if lemma in irregular_plural or lemma in uncountable or len(lemma) < 2:
            continue
        if "NN" in tags.get(lemma, ()):
            rows.append((lemma, "NNS", [_s_form(lemma)]))

    # --- adjectives/adverbs: attested graded forms only (no generation;
    # most long adjectives take "more"/"most" instead of a suffix)
    graded: dict[tuple[str, str], list[str]] = {}
    for line in (raw / "wn_adj_exc.tsv").read_text().splitlines():
        form, _, lemmas = line.partition("\t")
        if not _is_word(form):
            continue
        if form.endswith("est"):
            degree = "S"
        elif form.endswith("er"):
            degree = "R"
        else:
            continue
        for lemma in lemmas.split(","):
            if not _is_word(lemma) or lemma == form:
                continue
            for cls in ("JJ", "RB"):
                if cls in tags.get(lemma, ()):
                    key = (lemma, cls + degree)
                    graded.setdefault(key, [])
                    if form not in graded[key]:
                        graded[key].append(form)
    for (lemma, pos), forms in sorted(graded.items()):
        rows.append((lemma, pos, forms))

    return rows


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--raw", type=Path, required=True, help="raw input directory")
    ap.add_argument("--out", type=Path, required=True, help="output data directory")
    args = ap.parse_args()

    words, counts, tags = load_raw(args.raw)
    entries = build_dictionary(words, counts, tags)
    assert len(entries) == TARGET_DICTIONARY_SIZE, len(entries)

    args.out.mkdir(parents=True, exist_ok=True)
    dict_path = args.out / "frequency_dictionary.txt"
    with open(dict_path, "w", encoding="utf-8") as f:
        for w in sorted(entries, key=lambda w: (-entries[w], w)):
            f.write(f"{w} {entries[w]}\n")

    rows = build_lexicon_rows(args.raw, entries, tags)
    lex_path = args.out / "inflections.tsv"
    with open(lex_path, "w", encoding="utf-8") as f:
        for lemma, pos, forms in rows:
            f.write(f"{lemma}\t{pos}\t{','.join(forms)}\n")

    # spot checks: pairs the toolkit's own tests rely on
    text = lex_path.read_text()
    for needle in (
        "activity\tNNS\tactivities",
        "run\tVBD\tran",
        "go\tVBD\twent",
    ):
        assert needle in text, f"missing lexicon row: {needle}"
    for word in ("believe", "receive", "their", "there"):
        assert word in entries, f"missing dictionary word: {word}"

    print(f"{dict_path}: {len(entries)} entries")
    print(f"{lex_path}: {len(rows)} rows")
    return 0


if __name__ == "__main__":
    sys.exit(main())
