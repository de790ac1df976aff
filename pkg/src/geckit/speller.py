"""Symmetric-delete spelling correction.

The dictionary indexes every variant of every word obtainable by deleting
up to ``max_edit_distance`` characters.  Lookup generates the same delete
variants of the query and collects every word sharing one, then ranks the
survivors by true edit distance.  The distance is optimal string alignment
(OSA): insertions, deletions, substitutions and adjacent transpositions,
with no substring edited twice.

Ranking is fully deterministic: smallest distance, then highest corpus
frequency, then lexicographically smallest word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple


def osa_distance(a: str, b: str) -> int:
    """Restricted Damerau-Levenshtein (optimal string alignment) distance."""
    if a == b:
        return 0
    la, lb = len(a), len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la
    prev2: list[int] | None = None
    prev = list(range(lb + 1))
    for i in range(1, la + 1):
        cur = [i] + [0] * lb
        ca = a[i - 1]
        for j in range(1, lb + 1):
            cost = 0 if ca == b[j - 1] else 1
            best = prev[j - 1] + cost
            if prev[j] + 1 < best:
                best = prev[j] + 1
            if cur[j - 1] + 1 < best:
                best = cur[j - 1] + 1
            if (
                i > 1
                and j > 1
                and ca == b[j - 2]
                and a[i - 2] == b[j - 1]
            ):
                swap = prev2[j - 2] + 1  # type: ignore[index]
                if swap < best:
                    best = swap
            cur[j] = best
        prev2, prev = prev, cur
    return prev[lb]


def delete_variants(word: str, max_deletes: int) -> set[str]:
    """All strings reachable from ``word`` by up to ``max_deletes`` deletions,
    including ``word`` itself."""
    seen = {word}
    frontier = {word}
    for _ in range(max_deletes):
        nxt = set()
        for w in frontier:
            for i in range(len(w)):
                v = w[:i] + w[i + 1 :]
                if v not in seen:
                    seen.add(v)
                    nxt.add(v)
        frontier = nxt
    return seen


class Correction(NamedTuple):
    word: str
    distance: int
    frequency: int


@dataclass
class SpellDictionary:
    """Word frequencies plus the delete-variant index for fast lookup."""

    words: dict[str, int]
    max_edit_distance: int
    delete_index: dict[str, list[str]] = field(repr=False)
    rejected_entries: int = 0

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def correct(self, raw: str) -> Correction | None:
        """Nearest dictionary word within ``max_edit_distance`` edits.

        Lookup runs on the lowercased input; when the input starts with an
        uppercase letter the correction's first letter is re-uppercased.
        Returns ``None`` when no word is close enough.
        """
        if not raw:
            return None
        query = raw.lower()
        restore = raw[0].isupper()

        hit = self.words.get(query)
        if hit is not None:
            # A distance-0 match is uniquely minimal; no ranking needed.
            return Correction(self._recase(query, restore), 0, hit)

        n = self.max_edit_distance
        candidates: set[str] = set()
        for variant in delete_variants(query, n):
            bucket = self.delete_index.get(variant)
            if bucket:
                candidates.update(bucket)

        best: tuple[int, int, str] | None = None
        for word in candidates:
            if abs(len(word) - len(query)) > n:
                continue  # distance is at least the length gap
            d = osa_distance(query, word)
            if d > n:
                continue
            key = (d, -self.words[word], word)
            if best is None or key < best:
                best = key
        if best is None:
            return None
        d, neg_freq, word = best
        return Correction(self._recase(word, restore), d, -neg_freq)

    @staticmethod
    def _recase(word: str, restore_capital: bool) -> str:
        if restore_capital and word:
            return word[0].upper() + word[1:]
        return word


def build_dictionary(
    entries: Iterable[tuple[str, int]], max_edit_distance: int = 2
) -> SpellDictionary:
    """Index ``(word, frequency)`` entries for symmetric-delete lookup.

    Duplicate words keep their maximum frequency; entries with
    non-positive frequency are rejected and counted.
    """
    if max_edit_distance < 1:
        raise ValueError("max_edit_distance must be >= 1")
    words: dict[str, int] = {}
    rejected = 0
    for word, freq in entries:
        if freq <= 0 or not word:
            rejected += 1
            continue
        prev = words.get(word)
        if prev is None or freq > prev:
            words[word] = freq
    index: dict[str, list[str]] = {}
    for word in words:
        for variant in delete_variants(word, max_edit_distance):
            index.setdefault(variant, []).append(word)
    return SpellDictionary(
        words=words,
        max_edit_distance=max_edit_distance,
        delete_index=index,
        rejected_entries=rejected,
    )


def load_frequency_dictionary(
    path: str | Path, max_edit_distance: int = 2
) -> SpellDictionary:
    """Load a ``word<SPACE>frequency`` file and build the lookup index.

    Malformed lines are skipped and counted in ``rejected_entries``.
    """
    entries: list[tuple[str, int]] = []
    malformed = 0
    with open(path, encoding="utf-8") as f:
        for line in f:
            parts = line.split()
            if len(parts) != 2:
                if line.strip():
                    malformed += 1
                continue
            word, raw_freq = parts
            try:
                freq = int(raw_freq)
            except ValueError:
                malformed += 1
                continue
            entries.append((word, freq))
    d = build_dictionary(entries, max_edit_distance)
    d.rejected_entries += malformed
    return d
