"""Edit spans and span-based ensemble voting.

Each system's correction is reduced to typed edit spans against the
shared source; a span is accepted when enough systems propose exactly the
same span (same boundaries, same type, same replacement).  By default,
an ensemble of k systems accepts spans proposed by at least k-1 of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .align import OpKind, token_diff
from .errors import ContractViolation


class SpanType(str, Enum):
    INSERT = "insert"
    DELETE = "delete"
    REPLACE = "replace"


@dataclass(frozen=True)
class EditSpan:
    """A typed contiguous edit against the source token sequence.

    ``category`` is a label carried by gold annotations; it is excluded
    from equality so that voting and matching compare the edit itself.
    """

    start: int
    end: int
    span_type: SpanType
    replacement: tuple[str, ...]
    category: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.start < 0 or self.end < self.start:
            raise ContractViolation(f"bad span bounds [{self.start},{self.end})")
        if self.span_type is SpanType.INSERT:
            if self.end != self.start or not self.replacement:
                raise ContractViolation("insert span must be empty-range with text")
        elif self.span_type is SpanType.DELETE:
            if self.end == self.start or self.replacement:
                raise ContractViolation("delete span must cover tokens, no text")
        else:
            if self.end == self.start or not self.replacement:
                raise ContractViolation("replace span must cover tokens with text")

    @property
    def signature(self) -> tuple[int, int, tuple[str, ...]]:
        """Identity used for voting and scoring: boundaries + replacement.
        The type is implied by the boundary/replacement shape."""
        return (self.start, self.end, self.replacement)


def make_span(
    start: int, end: int, replacement: Sequence[str], category: str | None = None
) -> EditSpan:
    """Build a span, inferring its type from the shape."""
    replacement = tuple(replacement)
    if start == end:
        kind = SpanType.INSERT
    elif replacement:
        kind = SpanType.REPLACE
    else:
        kind = SpanType.DELETE
    return EditSpan(start, end, kind, replacement, category)


def extract_spans(
    source: Sequence[str], corrected: Sequence[str]
) -> list[EditSpan]:
    """Non-overlapping edit spans turning ``source`` into ``corrected``.

    Adjacent edited positions merge into a single span, so the result is
    a maximal grouping of the minimal token diff, sorted by position.
    """
    ops = token_diff(source, corrected)
    spans: list[EditSpan] = []
    run_start = run_end = -1
    run_repl: list[str] = []

    def flush() -> None:
        nonlocal run_start
        if run_start >= 0:
            spans.append(make_span(run_start, run_end, run_repl))
            run_start = -1
            run_repl.clear()

    for op in ops:
        if op.kind is OpKind.MATCH:
            flush()
            continue
        start = op.src_index
        end = op.src_index + (0 if op.kind is OpKind.INSERT else 1)
        if run_start < 0:
            run_start, run_end = start, end
        else:
            run_end = max(run_end, end)
        if op.kind is not OpKind.DELETE:
            run_repl.append(corrected[op.tgt_index])
    flush()
    return spans


def apply_spans(
    source: Sequence[str], spans: Sequence[EditSpan]
) -> list[str]:
    """Apply sorted, non-overlapping spans to the source tokens."""
    out: list[str] = []
    pos = 0
    for span in spans:
        if span.start < pos or span.end > len(source):
            raise ContractViolation("spans overlap, are unsorted, or out of range")
        out.extend(source[pos : span.start])
        out.extend(span.replacement)
        pos = span.end
    out.extend(source[pos:])
    return out


def _conflicts(a: EditSpan, b: EditSpan) -> bool:
    """Whether two accepted spans cannot both be applied."""
    if a.start == a.end and b.start == b.end:
        return a.start == b.start  # two different inserts at one point
    if a.start == a.end:
        return b.start < a.start < b.end  # insert strictly inside a range
    if b.start == b.end:
        return a.start < b.start < a.end
    return a.start < b.end and b.start < a.end


_TYPE_ORDER = {SpanType.INSERT: 0, SpanType.DELETE: 1, SpanType.REPLACE: 2}


@dataclass
class VoteOutcome:
    tokens: list[str]
    accepted: list[EditSpan]
    dropped_conflicts: int


def vote_detailed(
    source: Sequence[str],
    system_outputs: Sequence[Sequence[str]],
    min_votes: int | None = None,
) -> VoteOutcome:
    """Combine system outputs by span voting, reporting conflicts.

    A span counts one vote per system proposing it (identical boundaries,
    type and replacement).  Spans with at least ``min_votes`` votes
    (default: number of systems minus one) are applied to the source;
    when two accepted spans conflict, the one sorting earlier by
    (start, end, type, replacement) wins and the drop is counted.
    """
    k = len(system_outputs)
    if k < 2:
        raise ContractViolation("voting needs at least 2 system outputs")
    needed = k - 1 if min_votes is None else min_votes

    votes: dict[EditSpan, int] = {}
    for output in system_outputs:
        for span in extract_spans(source, output):
            votes[span] = votes.get(span, 0) + 1

    accepted = sorted(
        (s for s, nvotes in votes.items() if nvotes >= needed),
        key=lambda s: (
            s.start,
            s.end,
            _TYPE_ORDER[s.span_type],
            s.replacement,
        ),
    )
    kept: list[EditSpan] = []
    dropped = 0
    for span in accepted:
        if any(_conflicts(span, other) for other in kept):
            dropped += 1
        else:
            kept.append(span)
    return VoteOutcome(apply_spans(source, kept), kept, dropped)


def vote(
    source: Sequence[str],
    system_outputs: Sequence[Sequence[str]],
    min_votes: int | None = None,
) -> list[str]:
    """Span voting; see :func:`vote_detailed` for the reporting variant."""
    return vote_detailed(source, system_outputs, min_votes).tokens
