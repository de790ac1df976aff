"""Independent reference implementations the test suite checks against.

These deliberately share no code with the package: the edit distance is
the textbook full-matrix DP, the spelling oracle is a linear scan over
the whole dictionary (numba-compiled so scanning 82k words per query
stays fast), the splice interpreter is the obvious list rewrite, and the
voting oracle counts span supporters by set membership.
"""

from __future__ import annotations

import numpy as np
from numba import njit


def osa_reference(a: str, b: str) -> int:
    """Full-matrix optimal string alignment distance, no shortcuts."""
    la, lb = len(a), len(b)
    d = [[0] * (lb + 1) for _ in range(la + 1)]
    for i in range(la + 1):
        d[i][0] = i
    for j in range(lb + 1):
        d[0][j] = j
    for i in range(1, la + 1):
        for j in range(1, lb + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            d[i][j] = min(
                d[i - 1][j] + 1,
                d[i][j - 1] + 1,
                d[i - 1][j - 1] + cost,
            )
            if (
                i > 1
                and j > 1
                and a[i - 1] == b[j - 2]
                and a[i - 2] == b[j - 1]
            ):
                d[i][j] = min(d[i][j], d[i - 2][j - 2] + 1)
    return d[la][lb]


@njit(cache=True)
def _osa_scan(query, enc, offsets, dists):
    buf0 = np.empty(64, dtype=np.int64)
    buf1 = np.empty(64, dtype=np.int64)
    buf2 = np.empty(64, dtype=np.int64)
    for w in range(len(offsets) - 1):
        b = enc[offsets[w] : offsets[w + 1]]
        la, lb = len(query), len(b)
        for j in range(lb + 1):
            buf0[j] = j
        prev2, prev, cur = buf2, buf0, buf1
        for i in range(1, la + 1):
            cur[0] = i
            ca = query[i - 1]
            for j in range(1, lb + 1):
                cost = 0 if ca == b[j - 1] else 1
                m = prev[j - 1] + cost
                if prev[j] + 1 < m:
                    m = prev[j] + 1
                if cur[j - 1] + 1 < m:
                    m = cur[j - 1] + 1
                if i > 1 and j > 1 and ca == b[j - 2] and query[i - 2] == b[j - 1]:
                    t = prev2[j - 2] + 1
                    if t < m:
                        m = t
                cur[j] = m
            tmp = prev2
            prev2 = prev
            prev = cur
            cur = tmp
        dists[w] = prev[lb]


class BruteForceSpeller:
    """Linear-scan nearest-word oracle with the production tie-breaks:
    minimum distance, then maximum frequency, then smallest word."""

    def __init__(self, words: dict[str, int], max_edit_distance: int = 2):
        self.n = max_edit_distance
        self.words = sorted(words)
        self.freqs = [words[w] for w in self.words]
        blob = "".join(self.words).encode("ascii")
        self.enc = np.frombuffer(blob, dtype=np.uint8)
        self.offsets = np.zeros(len(self.words) + 1, dtype=np.int64)
        pos = 0
        for i, w in enumerate(self.words):
            pos += len(w)
            self.offsets[i + 1] = pos
        self.dists = np.zeros(len(self.words), dtype=np.int64)

    def correct(self, query: str) -> tuple[str, int, int] | None:
        q = np.frombuffer(query.encode("ascii"), dtype=np.uint8)
        _osa_scan(q, self.enc, self.offsets, self.dists)
        best = None
        for i in range(len(self.words)):
            d = int(self.dists[i])
            if d > self.n:
                continue
            key = (d, -self.freqs[i], self.words[i])
            if best is None or key < best:
                best = key
        if best is None:
            return None
        return (best[2], best[0], -best[1])


def splice_reference(tokens, tags) -> list[str]:
    """Reference interpreter for KEEP/DELETE/APPEND/REPLACE only."""
    from geckit.tags import Append, Delete, Keep, Replace, START_TOKEN

    out = []
    for tok, tag in zip(tokens, tags):
        own = [] if tok == START_TOKEN else [tok]
        if isinstance(tag, Keep):
            out += own
        elif isinstance(tag, Delete):
            pass
        elif isinstance(tag, Append):
            out += own + [tag.word]
        elif isinstance(tag, Replace):
            out += [tag.word] if tok != START_TOKEN else []
    return out


def vote_reference(source, system_outputs, min_votes=None):
    """Span voting by explicit support counting over the span union."""
    from geckit.ensemble import _conflicts, apply_spans, extract_spans

    needed = len(system_outputs) - 1 if min_votes is None else min_votes
    proposals = [set(extract_spans(source, out)) for out in system_outputs]
    universe = set().union(*proposals)
    accepted = [
        span
        for span in universe
        if sum(span in p for p in proposals) >= needed
    ]
    accepted.sort(
        key=lambda s: (s.start, s.end, s.span_type.value, s.replacement)
    )
    kept = []
    for span in accepted:
        if all(not _conflicts(span, k) for k in kept):
            kept.append(span)
    return apply_spans(source, kept)
