#!/usr/bin/env python3
"""Generate the committed fixture corpus used by the test suite.

Every pair is built backwards: a clean target sentence is assembled from
word pools, then a seeded corruption (misspelling, wrong inflection,
missing/extra word, casing, merge/split, word choice) is injected to form
the source.  Each corruption records its gold edit span and an error
category, so the generator can emit source text, target text and a
matching M2 gold file in one pass.

Every emitted pair is verified to round-trip through the labelling
pipeline under all four tagset kinds; pairs that do not are regenerated.

Outputs (under --out):
    fixture.src, fixture.tgt, fixture.m2    the main 1000-pair corpus
    dev.src, dev.m2                         a small slice for tuning tests
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from geckit.apply import apply_tags  # noqa: E402
from geckit.data import default_dictionary_path, default_lexicon_path  # noqa: E402
from geckit.ensemble import make_span  # noqa: E402
from geckit.inflect import InflectionEngine, VerbFormTable, load_lexicon  # noqa: E402
from geckit.preprocess import SentencePair, label_pair  # noqa: E402
from geckit.score import GoldSentence, format_m2  # noqa: E402
from geckit.speller import load_frequency_dictionary  # noqa: E402
from geckit.tags import CoarsePos, PtbPos  # noqa: E402
from geckit.vocab import TagsetKind  # noqa: E402

ALPHABET = "abcdefghijklmnopqrstuvwxyz"

DETERMINERS = ["the", "a", "this", "that", "their", "his", "her", "our"]
PRONOUNS = ["i", "we", "they", "he", "she", "you"]
PREPOSITIONS = ["in", "on", "at", "with", "from", "about", "near", "under"]
ADJECTIVES = [
    "big", "small", "old", "young", "happy", "angry", "quiet", "busy",
    "bright", "heavy", "early", "late", "strange", "simple", "serious",
    "friendly", "tired", "famous", "narrow", "gentle", "honest", "clever",
]
ADVERBS = ["quickly", "slowly", "often", "never", "really", "quietly"]
CONFUSIONS = [
    ("their", "there"), ("there", "their"), ("to", "too"),
    ("than", "then"), ("your", "you"), ("were", "where"),
]
HYPHEN_COMPOUNDS = [
    ("well", "known"), ("long", "term"), ("self", "esteem"),
    ("co", "worker"), ("e", "mail"), ("part", "time"),
]


class Corruption:
    """One gold edit: source tokens -> target tokens, with a category."""

    def __init__(self, src_tokens, tgt_tokens, category):
        self.src_tokens = list(src_tokens)
        self.tgt_tokens = list(tgt_tokens)
        self.category = category


class Pools:
    def __init__(self, rng: random.Random, speller, engine: InflectionEngine):
        self.rng = rng
        self.speller = speller
        self.engine = engine
        lex = engine.lexicon
        freq = speller.words

        def common(word: str, at_least: int = 300) -> bool:
            return freq.get(word, 0) >= at_least

        self.nouns = sorted(
            lemma
            for (lemma, pos) in lex.forms_of
            if pos is PtbPos.NNS
            and 3 <= len(lemma) <= 10
            and common(lemma)
            and common(lex.forms_of[(lemma, pos)][0], 50)
        )
        self.verbs = sorted(
            {
                lemma
                for (lemma, pos) in lex.forms_of
                if pos is PtbPos.VBD and 3 <= len(lemma) <= 9 and common(lemma)
            }
        )
        merged = []
        for w, f in freq.items():
            if f < 200 or not 6 <= len(w) <= 10:
                continue
            for cut in range(3, len(w) - 2):
                a, b = w[:cut], w[cut:]
                if freq.get(a, 0) >= 1000 and freq.get(b, 0) >= 1000:
                    merged.append((a, b, w))
                    break
        self.compounds = sorted(merged)[:120]

    def noun(self):
        lemma = self.rng.choice(self.nouns)
        if self.rng.random() < 0.35:
            return self.engine.inflect(lemma, PtbPos.NNS)
        return lemma

    def verb_form(self, pos: PtbPos):
        lemma = self.rng.choice(self.verbs)
        return self.engine.inflect(lemma, pos)


def build_target(pools: Pools, rng: random.Random):
    """A clean sentence plus a parallel list of token roles."""
    tokens: list[str] = []
    roles: list[str] = []

    def add(tok: str, role: str) -> None:
        tokens.append(tok)
        roles.append(role)

    shape = rng.randrange(5)
    if shape == 4:
        add(rng.choice(PRONOUNS).capitalize(), "pron0")
        add(rng.choice(["was", "is"]), "aux")
        add(pools.verb_form(PtbPos.VBG), "verb")
        add(rng.choice(PREPOSITIONS), "prep")
        add(rng.choice(DETERMINERS), "det")
        add(pools.noun(), "noun")
    elif shape == 0:
        add(rng.choice(DETERMINERS).capitalize(), "det0")
        if rng.random() < 0.5:
            add(rng.choice(ADJECTIVES), "adj")
        add(pools.noun(), "noun")
        add(pools.verb_form(PtbPos.VBD), "verb")
        add(rng.choice(DETERMINERS), "det")
        add(pools.noun(), "noun")
        add(rng.choice(PREPOSITIONS), "prep")
        add(rng.choice(DETERMINERS), "det")
        add(pools.noun(), "noun")
    elif shape == 1:
        add(rng.choice(PRONOUNS).capitalize(), "pron0")
        add(pools.verb_form(rng.choice([PtbPos.VBD, PtbPos.VBP])), "verb")
        add(rng.choice(DETERMINERS), "det")
        if rng.random() < 0.5:
            add(rng.choice(ADJECTIVES), "adj")
        add(pools.noun(), "noun")
        if rng.random() < 0.4:
            add(rng.choice(ADVERBS), "adv")
    elif shape == 2:
        add(rng.choice(DETERMINERS).capitalize(), "det0")
        add(pools.noun(), "noun")
        add("is", "verb")
        add(rng.choice(ADJECTIVES), "adj")
        add(rng.choice(PREPOSITIONS), "prep")
        add(rng.choice(DETERMINERS), "det")
        add(pools.noun(), "noun")
    else:
        add(rng.choice(PRONOUNS).capitalize(), "pron0")
        add(pools.verb_form(PtbPos.VBZ if rng.random() < 0.3 else PtbPos.VBD), "verb")
        add(rng.choice(PREPOSITIONS), "prep")
        add(rng.choice(DETERMINERS), "det")
        add(pools.noun(), "noun")
        add(rng.choice(PREPOSITIONS), "prep")
        add(pools.noun(), "noun")
    add(".", "punct")
    return tokens, roles


def perturb_word(word: str, rng: random.Random, edits: int) -> str:
    w = word
    for _ in range(edits):
        op = rng.choice("idst")
        if op == "i":
            i = rng.randrange(len(w) + 1)
            w = w[:i] + rng.choice(ALPHABET) + w[i:]
        elif op == "d" and len(w) > 1:
            i = rng.randrange(len(w))
            w = w[:i] + w[i + 1 :]
        elif op == "s":
            i = rng.randrange(len(w))
            w = w[:i] + rng.choice(ALPHABET) + w[i + 1 :]
        elif len(w) > 1:
            i = rng.randrange(len(w) - 1)
            w = w[:i] + w[i + 1] + w[i] + w[i + 2 :]
    return w


class Corruptor:
    def __init__(self, pools: Pools, rng: random.Random):
        self.pools = pools
        self.rng = rng
        self.speller = pools.speller
        self.engine = pools.engine

    def misspell(self, word: str) -> Corruption | None:
        lowered = word.lower()
        for _ in range(25):
            bad = perturb_word(lowered, self.rng, self.rng.choice([1, 1, 2]))
            if not bad.isalpha() or bad == lowered or bad in self.speller:
                continue
            hit = self.speller.correct(bad)
            if hit is not None and hit.word == lowered and word == lowered:
                return Corruption([bad], [word], "R:SPELL")
        return None

    def confusion(self, word: str) -> Corruption | None:
        for good, bad in CONFUSIONS:
            if word == good and bad.isascii():
                return Corruption([bad], [word], "R:SPELL")
        return None

    def reinflect(self, word: str, role: str) -> Corruption | None:
        eng = self.engine
        lemma = None
        poses: list[PtbPos] = []
        if role == "noun":
            lemma = eng.lemmatize(word.lower(), CoarsePos.NOUN)
            poses = [PtbPos.NN, PtbPos.NNS]
        elif role == "verb":
            lemma = eng.lemmatize(word.lower(), CoarsePos.VERB)
            poses = [PtbPos.VB, PtbPos.VBZ, PtbPos.VBD, PtbPos.VBG, PtbPos.VBN]
        if lemma is None:
            return None
        forms = {eng.inflect(lemma, p) for p in poses}
        forms.discard(word.lower())
        wrong = sorted(forms)
        self.rng.shuffle(wrong)
        for bad in wrong:
            if not bad.isalpha():
                continue
            if eng.can_inflect_to(bad, word) is None:
                continue
            if role == "noun":
                category = "R:NOUN:NUM"
            elif word.lower().endswith("s") or bad.endswith("s"):
                category = "R:VERB:SVA"
            elif word.lower().endswith("ed") or bad.endswith("ed"):
                category = "R:VERB:TENSE"
            else:
                category = "R:VERB:FORM"
            return Corruption([bad], [word], category)
        return None

    def lowercase_first(self, word: str) -> Corruption | None:
        if word[0].isupper() and word.lower() != word:
            return Corruption([word.lower()], [word], "R:ORTH")
        return None

    def word_choice(self, word: str, role: str) -> Corruption | None:
        pool = self.pools.nouns if role == "noun" else ADJECTIVES
        for _ in range(10):
            bad = self.rng.choice(pool)
            if bad == word:
                continue
            if self.engine.can_inflect_to(bad, word) is not None:
                continue
            hit = self.speller.correct(bad)
            if hit is not None and hit.word == word:
                continue
            return Corruption([bad], [word], "R:OTHER")
        return None


def corrupt_sentence(
    tokens: list[str],
    roles: list[str],
    corruptor: Corruptor,
    rng: random.Random,
    n_errors: int,
):
    """Pick non-adjacent positions and corrupt them; returns the source
    tokens and the gold edit spans in source coordinates."""
    pools = corruptor.pools
    candidates = list(range(len(tokens)))
    rng.shuffle(candidates)
    chosen: list[int] = []
    for p in candidates:
        if len(chosen) >= n_errors:
            break
        if all(abs(p - q) >= 2 for q in chosen):
            chosen.append(p)
    chosen.sort()

    plan: dict[int, Corruption] = {}
    for p in chosen:
        role = roles[p]
        word = tokens[p]
        c: Corruption | None = None
        kind = rng.random()
        if role in ("det0", "pron0") and kind < 0.5:
            c = corruptor.lowercase_first(word)
        elif role in ("det", "prep"):
            if kind < 0.45:
                c = Corruption([], [word], "M:OTHER")  # missing word
            elif kind < 0.8:
                # extra word before this one; must differ from both
                # neighbours so the minimal diff deletes exactly it
                extra = rng.choice(DETERMINERS + PREPOSITIONS)
                prev = tokens[p - 1] if p else None
                if extra != word and extra != prev:
                    c = Corruption([extra], [], "U:OTHER")
            else:
                c = corruptor.confusion(word)
        elif role == "noun":
            if kind < 0.35:
                c = corruptor.misspell(word)
            elif kind < 0.7:
                c = corruptor.reinflect(word, role)
            elif kind < 0.8:
                c = corruptor.word_choice(word, role)
            elif kind < 0.9 and pools.compounds:
                a, b, w = rng.choice(pools.compounds)
                c = Corruption([a, b], [w], "R:ORTH")
                tokens = tokens[:p] + [w] + tokens[p + 1 :]
            else:
                a, b = rng.choice(HYPHEN_COMPOUNDS)
                c = Corruption([f"{a}-{b}"], [a, b], "R:ORTH")
                tokens = tokens[:p] + [a, b] + tokens[p + 1 :]
                roles = roles[:p] + ["noun", "noun"] + roles[p + 1 :]
                for i, q in enumerate(chosen):
                    if q > p:
                        chosen[i] = q + 1
        elif role == "verb":
            if kind < 0.3:
                c = corruptor.misspell(word)
            else:
                c = corruptor.reinflect(word, role)
        elif role == "adj" and kind < 0.5:
            c = corruptor.misspell(word)
        if c is not None:
            plan[p] = c

    src: list[str] = []
    edits = []
    i = 0
    while i <= len(tokens):
        c = plan.pop(i, None)
        if c is not None:
            start = len(src)
            src.extend(c.src_tokens)
            edits.append(
                make_span(start, start + len(c.src_tokens), c.tgt_tokens, c.category)
            )
            i += len(c.tgt_tokens)
            continue
        if i < len(tokens):
            src.append(tokens[i])
        i += 1
    return src, tokens, edits


def verify_pair(pair, resources) -> bool:
    speller, engine, verb_forms = resources
    for kind in TagsetKind:
        labeled = label_pair(
            pair,
            kind,
            speller=speller if kind.has_spell else None,
            engine=engine if kind.has_inflect else None,
            verb_forms=verb_forms,
        )
        out = apply_tags(
            labeled.source,
            labeled.tags,
            speller if kind.has_spell else None,
            engine if kind.has_inflect else None,
            verb_forms,
        )
        if tuple(out) != pair.target:
            return False
    return True


def generate(n_pairs: int, pools, corruptor, resources, rng):
    from geckit.ensemble import extract_spans

    pairs: list[SentencePair] = []
    golds: list[GoldSentence] = []
    rejected = 0
    while len(pairs) < n_pairs:
        tokens, roles = build_target(pools, rng)
        n_errors = rng.choice([0, 0, 1, 1, 1, 1, 1, 2, 2, 3])
        src, tgt, edits = corrupt_sentence(tokens, roles, corruptor, rng, n_errors)
        try:
            pair = SentencePair(tuple(src), tuple(tgt))
        except Exception:
            rejected += 1
            continue
        # gold spans must be exactly the minimal diff, so a perfect
        # hypothesis scores 1.0 against the M2 file
        diff_sigs = [s.signature for s in extract_spans(src, tgt)]
        if diff_sigs != [e.signature for e in edits]:
            rejected += 1
            continue
        if not verify_pair(pair, resources):
            rejected += 1
            continue
        pairs.append(pair)
        golds.append(
            GoldSentence(source=tuple(src), annotations={0: tuple(edits)})
        )
    return pairs, golds, rejected


def write_corpus(out: Path, stem: str, pairs, golds, with_tgt=True) -> None:
    with open(out / f"{stem}.src", "w", encoding="utf-8") as f:
        for p in pairs:
            f.write(" ".join(p.source) + "\n")
    if with_tgt:
        with open(out / f"{stem}.tgt", "w", encoding="utf-8") as f:
            for p in pairs:
                f.write(" ".join(p.target) + "\n")
    with open(out / f"{stem}.m2", "w", encoding="utf-8") as f:
        for g in golds:
            f.write(format_m2(g) + "\n")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, required=True)
    ap.add_argument("--seed", type=int, default=20240811)
    ap.add_argument("--pairs", type=int, default=1000)
    ap.add_argument("--dev", type=int, default=120)
    args = ap.parse_args()

    print("loading dictionary and lexicon ...")
    speller = load_frequency_dictionary(default_dictionary_path())
    engine = InflectionEngine(load_lexicon(default_lexicon_path()))
    verb_forms = VerbFormTable.from_file(default_lexicon_path())
    resources = (speller, engine, verb_forms)

    rng = random.Random(args.seed)
    pools = Pools(rng, speller, engine)
    corruptor = Corruptor(pools, rng)
    print(f"pools: {len(pools.nouns)} nouns, {len(pools.verbs)} verbs, "
          f"{len(pools.compounds)} compounds")

    args.out.mkdir(parents=True, exist_ok=True)
    pairs, golds, rejected = generate(args.pairs, pools, corruptor, resources, rng)
    write_corpus(args.out, "fixture", pairs, golds)
    print(f"fixture: {len(pairs)} pairs ({rejected} regenerated)")

    dev_pairs, dev_golds, dev_rejected = generate(args.dev, pools, corruptor, resources, rng)
    write_corpus(args.out, "dev", dev_pairs, dev_golds, with_tgt=False)
    print(f"dev: {len(dev_pairs)} pairs ({dev_rejected} regenerated)")

    # sanity: the generalisation statistics the suite asserts
    from geckit.preprocess import build_vocabulary, preprocess_pairs

    base, _ = preprocess_pairs(pairs, TagsetKind.BASETAGS, verb_forms=verb_forms)
    both, _ = preprocess_pairs(
        pairs,
        TagsetKind.SPELL_INFLECT,
        speller=speller,
        engine=engine,
        verb_forms=verb_forms,
    )
    vb_base = build_vocabulary(base, TagsetKind.BASETAGS, 5000)
    vb_both = build_vocabulary(both, TagsetKind.SPELL_INFLECT, 5000)
    print(
        f"distinct tags: basetags={len(vb_base.tag_counts)} "
        f"spell+inflect={len(vb_both.tag_counts)}"
    )
    assert len(vb_both.tag_counts) < len(vb_base.tag_counts)
    assert vb_both.coverage >= vb_base.coverage
    return 0


if __name__ == "__main__":
    sys.exit(main())
