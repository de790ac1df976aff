"""Minimal token-level alignment between two token sequences.

Unit-cost Levenshtein over tokens with a fixed backtrace preference
(insert, then delete, then diagonal) so the alignment is deterministic.
The insert-first preference attaches insertions to the rightmost possible
source token, which is what the tagging layer wants for APPEND edits.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence


class OpKind(Enum):
    MATCH = "match"
    SUB = "sub"
    DELETE = "del"
    INSERT = "ins"


@dataclass(frozen=True)
class AlignOp:
    kind: OpKind
    src_index: int  # position in source (DELETE/MATCH/SUB), else insertion point
    tgt_index: int  # position in target (INSERT/MATCH/SUB), else -1


def token_diff(source: Sequence[str], target: Sequence[str]) -> list[AlignOp]:
    """Edit script turning ``source`` into ``target``, in source order."""
    n, m = len(source), len(target)
    # dp[i][j]: cost of aligning source[:i] with target[:j]
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        dp[i][0] = i
    for j in range(1, m + 1):
        dp[0][j] = j
    for i in range(1, n + 1):
        row = dp[i]
        prev = dp[i - 1]
        s = source[i - 1]
        for j in range(1, m + 1):
            best = prev[j - 1] + (0 if s == target[j - 1] else 1)
            if prev[j] + 1 < best:
                best = prev[j] + 1
            if row[j - 1] + 1 < best:
                best = row[j - 1] + 1
            row[j] = best

    ops: list[AlignOp] = []
    i, j = n, m
    while i > 0 or j > 0:
        if j > 0 and dp[i][j] == dp[i][j - 1] + 1:
            j -= 1
            ops.append(AlignOp(OpKind.INSERT, i, j))
        elif i > 0 and dp[i][j] == dp[i - 1][j] + 1:
            i -= 1
            ops.append(AlignOp(OpKind.DELETE, i, -1))
        else:
            i -= 1
            j -= 1
            kind = OpKind.MATCH if source[i] == target[j] else OpKind.SUB
            ops.append(AlignOp(kind, i, j))
    ops.reverse()
    return ops
