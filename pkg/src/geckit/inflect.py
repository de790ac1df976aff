"""Lemmatisation and inflection to Penn Treebank POS targets.

Two-stage design: a lexicon lookup first (irregular and attested forms),
then ordered suffix rules as the fallback, so every (word, POS) pair
produces an output.  The lexicon maps ``(form, coarse POS) -> lemma`` and
``(lemma, PTB POS) -> forms``; the rules handle regular morphology
(``+s``/``+es``/``y -> ies``, ``+ed``/``+ing`` with e-drop and consonant
doubling, ``+er``/``+est``).

Inflection operates on the lowercased word; an initial capital on the
input is restored on the output, mirroring the speller's case policy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from .errors import DataError
from .tags import (
    CoarsePos,
    INFLECTION_POS_ORDER,
    PtbPos,
    coarse_of,
)

_VOWELS = "aeiou"


def _is_vowel(ch: str) -> bool:
    return ch in _VOWELS


def _vowel_groups(word: str) -> int:
    groups = 0
    prev = False
    for ch in word:
        v = ch in _VOWELS or ch == "y"
        if v and not prev:
            groups += 1
        prev = v
    return groups


def _doubles_final(word: str) -> bool:
    """Monosyllabic consonant-vowel-consonant stems double before a vowel
    suffix (stop -> stopped) unless the final letter is w, x or y."""
    if len(word) < 3:
        return False
    c1, v, c2 = word[-3], word[-2], word[-1]
    return (
        not _is_vowel(c2)
        and c2 not in "wxy"
        and _is_vowel(v)
        and not _is_vowel(c1)
        and _vowel_groups(word) == 1
    )


def _s_form(lemma: str) -> str:
    if lemma.endswith(("s", "x", "z", "ch", "sh")):
        return lemma + "es"
    if len(lemma) > 1 and lemma.endswith("y") and not _is_vowel(lemma[-2]):
        return lemma[:-1] + "ies"
    return lemma + "s"


def _ed_form(lemma: str) -> str:
    if lemma.endswith("e"):
        return lemma + "d"
    if len(lemma) > 1 and lemma.endswith("y") and not _is_vowel(lemma[-2]):
        return lemma[:-1] + "ied"
    if _doubles_final(lemma):
        return lemma + lemma[-1] + "ed"
    return lemma + "ed"


def _ing_form(lemma: str) -> str:
    if lemma.endswith("ie"):
        return lemma[:-2] + "ying"
    if lemma.endswith("e") and not lemma.endswith(("ee", "oe", "ye")):
        return lemma[:-1] + "ing"
    if _doubles_final(lemma):
        return lemma + lemma[-1] + "ing"
    return lemma + "ing"


def _graded_form(lemma: str, suffix: str) -> str:
    # suffix is "er" or "est"
    if lemma.endswith("e"):
        return lemma + suffix[1:]
    if len(lemma) > 1 and lemma.endswith("y") and not _is_vowel(lemma[-2]):
        return lemma[:-1] + "i" + suffix
    if _doubles_final(lemma):
        return lemma + lemma[-1] + suffix
    return lemma + suffix


def rule_inflect(lemma: str, target: PtbPos) -> str:
    """Regular-morphology inflection of a lemma. Total: never fails."""
    if target in (PtbPos.NNS, PtbPos.VBZ):
        return _s_form(lemma)
    if target in (PtbPos.VBD, PtbPos.VBN):
        return _ed_form(lemma)
    if target is PtbPos.VBG:
        return _ing_form(lemma)
    if target in (PtbPos.JJR, PtbPos.RBR):
        return _graded_form(lemma, "er")
    if target in (PtbPos.JJS, PtbPos.RBS):
        return _graded_form(lemma, "est")
    # NN, VB, VBP, JJ, RB: the base form is the lemma itself.
    return lemma


def _strip_candidates(word: str, suffix: str) -> list[str]:
    """Candidate stems for a stripped suffix: undoubled consonant first,
    then e-restored, then the plain strip."""
    stem = word[: -len(suffix)]
    out = []
    if len(stem) >= 2 and stem[-1] == stem[-2] and not _is_vowel(stem[-1]):
        out.append(stem[:-1])
    out.append(stem + "e")
    out.append(stem)
    return out


def rule_lemmatize(word: str, coarse: CoarsePos) -> str:
    """Suffix-stripping fallback. Verified: a candidate stem is accepted
    only if the forward rules map it back to the input."""
    if coarse in (CoarsePos.NOUN, CoarsePos.VERB):
        if word.endswith("ies") and len(word) > 4:
            stem = word[:-3] + "y"
            if _s_form(stem) == word:
                return stem
        if word.endswith("es"):
            stem = word[:-2]
            if _s_form(stem) == word:
                return stem
        if word.endswith("s") and not word.endswith(("ss", "us", "is")):
            stem = word[:-1]
            if _s_form(stem) == word:
                return stem
    if coarse is CoarsePos.VERB:
        if word.endswith("ied") and len(word) > 4:
            stem = word[:-3] + "y"
            if _ed_form(stem) == word:
                return stem
        if word.endswith("ying") and len(word) > 5:
            stem = word[:-4] + "ie"
            if _ing_form(stem) == word:
                return stem
        if word.endswith("ing") and len(word) > 4:
            for stem in _strip_candidates(word, "ing"):
                if len(stem) >= 2 and _ing_form(stem) == word:
                    return stem
        if word.endswith("ed") and len(word) > 3:
            for stem in _strip_candidates(word, "ed"):
                if len(stem) >= 2 and _ed_form(stem) == word:
                    return stem
    if coarse in (CoarsePos.ADJ, CoarsePos.ADV):
        for suffix, repl in (("iest", "y"), ("ier", "y")):
            if word.endswith(suffix) and len(word) > len(suffix) + 1:
                stem = word[: -len(suffix)] + repl
                target = "est" if suffix == "iest" else "er"
                if _graded_form(stem, target) == word:
                    return stem
        for suffix in ("est", "er"):
            if word.endswith(suffix) and len(word) > len(suffix) + 1:
                for stem in _strip_candidates(word, suffix):
                    if len(stem) >= 2 and _graded_form(stem, suffix) == word:
                        return stem
    return word


class InflectionLexicon:
    """Bidirectional form tables with deterministic conflict resolution.

    Construction claims ``(form, coarse POS) -> lemma`` slots in three
    phases: forms distinct from their lemma claim first (in row order),
    then lemmas claim their own fixed point, and finally rows are filtered
    so every surviving form maps back to its lemma.  The result satisfies
    both lexicon invariants by construction, whatever the input rows.
    """

    def __init__(
        self, rows: Iterable[tuple[str, PtbPos, tuple[str, ...]]]
    ) -> None:
        rows = [
            (lemma, pos, tuple(forms)) for lemma, pos, forms in rows if forms
        ]
        lemma_of: dict[tuple[str, CoarsePos], str] = {}
        for lemma, pos, forms in rows:
            coarse = coarse_of(pos)
            for form in forms:
                if form != lemma:
                    lemma_of.setdefault((form, coarse), lemma)
        for lemma, pos, _ in rows:
            lemma_of.setdefault((lemma, coarse_of(pos)), lemma)

        forms_of: dict[tuple[str, PtbPos], tuple[str, ...]] = {}
        for lemma, pos, forms in rows:
            coarse = coarse_of(pos)
            if lemma_of.get((lemma, coarse)) != lemma:
                continue  # lemma lost its slot to another word's form
            kept = tuple(
                f for f in forms if lemma_of.get((f, coarse)) == lemma
            )
            if not kept:
                continue
            prev = forms_of.get((lemma, pos))
            if prev:
                kept = prev + tuple(f for f in kept if f not in prev)
            forms_of[(lemma, pos)] = kept

        # Drop lemma_of claims whose row vanished so both maps stay in sync.
        live = {
            (f, coarse_of(pos))
            for (lemma, pos), forms in forms_of.items()
            for f in forms
        }
        live.update(
            (lemma, coarse_of(pos)) for (lemma, pos) in forms_of
        )
        self.lemma_of = {k: v for k, v in lemma_of.items() if k in live}
        self.forms_of = forms_of

    def __len__(self) -> int:
        return len(self.forms_of)


def load_lexicon_rows(
    path: str | Path,
) -> list[tuple[str, PtbPos, tuple[str, ...]]]:
    """Parse ``lemma<TAB>ptb_pos<TAB>form1,form2,...`` rows."""
    rows = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise DataError(f"{path}:{lineno}: expected 3 tab fields")
            lemma, pos_code, forms = parts
            try:
                pos = PtbPos(pos_code)
            except ValueError:
                raise DataError(
                    f"{path}:{lineno}: unknown POS {pos_code!r}"
                ) from None
            rows.append(
                (lemma, pos, tuple(x for x in forms.split(",") if x))
            )
    return rows


def load_lexicon(path: str | Path) -> InflectionLexicon:
    return InflectionLexicon(load_lexicon_rows(path))


PosHinter = Callable[[str, PtbPos], CoarsePos]


@dataclass(frozen=True)
class InflectionEngine:
    lexicon: InflectionLexicon
    pos_hinter: PosHinter | None = field(default=None, compare=False)

    def _coarse(self, word: str, target: PtbPos) -> CoarsePos:
        if self.pos_hinter is not None:
            return self.pos_hinter(word, target)
        return coarse_of(target)

    def _lemma(self, lowered: str, coarse: CoarsePos) -> str:
        hit = self.lexicon.lemma_of.get((lowered, coarse))
        if hit is not None:
            return hit
        return rule_lemmatize(lowered, coarse)

    def lemmatize(self, word: str, coarse: CoarsePos) -> str:
        """Dictionary lemma when known, rule-stripped stem otherwise."""
        lowered = word.lower()
        lemma = self._lemma(lowered, coarse)
        return _restore_case(lemma, word)

    def inflect(self, word: str, target: PtbPos) -> str:
        """Inflect ``word`` to the target POS.  Never fails: unknown words
        fall back to regular-morphology rules, worst case identity."""
        lowered = word.lower()
        lemma = self._lemma(lowered, self._coarse(word, target))
        forms = self.lexicon.forms_of.get((lemma, target))
        out = forms[0] if forms else rule_inflect(lemma, target)
        return _restore_case(out, word)

    def can_inflect_to(self, source: str, target_word: str) -> PtbPos | None:
        """First POS (in the fixed tag order) whose inflection of
        ``source`` equals ``target_word`` exactly, or None."""
        if not source or not target_word:
            return None
        for pos in INFLECTION_POS_ORDER:
            if self.inflect(source, pos) == target_word:
                return pos
        return None


def _restore_case(word: str, original: str) -> str:
    if original[:1].isupper() and word:
        return word[0].upper() + word[1:]
    return word


class VerbFormTable:
    """Dictionary lookup behind the base tagset's verb-form transform.

    Uses the lexicon TSV format restricted to VB* rows.  Conversion maps
    the word to its verb lemma and picks the first listed form for the
    destination code; unknown words yield None (caller keeps the word).
    """

    def __init__(self, lexicon: InflectionLexicon) -> None:
        self.lexicon = lexicon

    @classmethod
    def from_file(cls, path: str | Path) -> "VerbFormTable":
        rows = [
            r for r in load_lexicon_rows(path) if coarse_of(r[1]) is CoarsePos.VERB
        ]
        return cls(InflectionLexicon(rows))

    def convert(self, word: str, src: PtbPos, dst: PtbPos) -> str | None:
        lowered = word.lower()
        lemma = self.lexicon.lemma_of.get((lowered, CoarsePos.VERB))
        if lemma is None:
            return None
        if dst is PtbPos.VB:
            out = lemma
        else:
            forms = self.lexicon.forms_of.get((lemma, dst))
            if not forms:
                return None
            out = forms[0]
        return _restore_case(out, word)
