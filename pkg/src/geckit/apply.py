"""Deterministic application of edit tags to a token sequence.

The engine is a pure function: identical inputs always produce identical
outputs, and no tag can abort a sentence.  Transforms that cannot be
resolved (unknown verb, no spelling candidate, ...) degrade to identity.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

from .errors import ContractViolation
from .tags import (
    Append,
    Case,
    CaseKind,
    Delete,
    EditTag,
    Inflect,
    Keep,
    Merge,
    MergeKind,
    NounNumber,
    NumberKind,
    Replace,
    Spell,
    SplitHyphen,
    START_TOKEN,
    VerbForm,
)

if TYPE_CHECKING:
    from .inflect import InflectionEngine, VerbFormTable
    from .speller import SpellDictionary

_MERGE_SEPARATORS = {MergeKind.SPACE: "", MergeKind.HYPHEN: "-"}


def _apply_case(token: str, kind: CaseKind) -> str:
    if kind is CaseKind.CAPITAL:
        return token.capitalize()
    if kind is CaseKind.CAPITAL_FIRST:
        return token[0].upper() + token[1:]
    if kind is CaseKind.LOWER:
        return token.lower()
    return token.upper()


def apply_tags(
    tokens: Sequence[str],
    tags: Sequence[EditTag],
    speller: "SpellDictionary | None" = None,
    inflector: "InflectionEngine | None" = None,
    verb_forms: "VerbFormTable | None" = None,
) -> list[str]:
    """Apply one edit tag per token and return the corrected tokens.

    A leading ``$START`` token is never emitted; only an ``$APPEND`` on it
    contributes output.  ``$MERGE`` joins the token with the next emitted
    token (identity when no token follows).
    """
    if len(tokens) != len(tags):
        raise ContractViolation(
            f"{len(tokens)} tokens but {len(tags)} tags"
        )

    out: list[str] = []
    pending_sep: str | None = None

    def emit(piece: str) -> None:
        nonlocal pending_sep
        if pending_sep is not None and out:
            out[-1] = out[-1] + pending_sep + piece
        else:
            out.append(piece)
        pending_sep = None

    for token, tag in zip(tokens, tags):
        if token == START_TOKEN:
            # The start placeholder has no surface of its own.
            if isinstance(tag, Append):
                emit(tag.word)
            continue
        if isinstance(tag, Keep):
            emit(token)
        elif isinstance(tag, Delete):
            pass
        elif isinstance(tag, Append):
            emit(token)
            emit(tag.word)
        elif isinstance(tag, Replace):
            emit(tag.word)
        elif isinstance(tag, Spell):
            if speller is None:
                emit(token)
            else:
                hit = speller.correct(token)
                emit(hit.word if hit is not None else token)
        elif isinstance(tag, Inflect):
            emit(inflector.inflect(token, tag.pos) if inflector else token)
        elif isinstance(tag, Case):
            emit(_apply_case(token, tag.kind))
        elif isinstance(tag, Merge):
            emit(token)
            pending_sep = _MERGE_SEPARATORS[tag.kind]
        elif isinstance(tag, SplitHyphen):
            parts = [p for p in token.split("-") if p]
            for p in parts or [token]:
                emit(p)
        elif isinstance(tag, NounNumber):
            if tag.kind is NumberKind.PLURAL:
                emit(token + "s")
            elif token.endswith("s") and len(token) > 1:
                emit(token[:-1])
            else:
                emit(token)
        elif isinstance(tag, VerbForm):
            converted = (
                verb_forms.convert(token, tag.src, tag.dst)
                if verb_forms is not None
                else None
            )
            emit(converted if converted is not None else token)
        else:  # pragma: no cover - sealed union
            raise ContractViolation(f"unhandled tag {tag!r}")

    return out


def detokenize(tokens: Sequence[str]) -> str:
    """Join tokens with single spaces (presentation only)."""
    return " ".join(tokens)
