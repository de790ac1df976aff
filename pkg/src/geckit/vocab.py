"""Tag vocabularies: which tags a model may emit, in a fixed id order.

A vocabulary is an ordered list of tags (index = tag id, id 0 is always
``$KEEP``) capped at a size limit.  Four tagset kinds exist; the kinds
differ in which closed-class tags they admit:

* ``basetags``      - basic edits + case/merge/split + the naive
                      singular/plural toggle + dictionary verb transforms
* ``spell``         - basetags plus the ``$SPELL`` tag
* ``inflect``       - basetags minus the singular/plural and verb-form
                      transforms, plus the 14 ``$INFLECT_POS`` tags
* ``spell+inflect`` - both extensions at once
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .tags import (
    DELETE,
    KEEP,
    SPELL,
    SPLIT_HYPHEN,
    Case,
    CaseKind,
    EditTag,
    Inflect,
    Merge,
    MergeKind,
    NounNumber,
    NumberKind,
    PtbPos,
    Spell,
    TagError,
    VerbForm,
    VERB_FORM_CODES,
    format_tag,
    parse_tag,
)


class TagsetKind(str, Enum):
    BASETAGS = "basetags"
    SPELL = "spell"
    INFLECT = "inflect"
    SPELL_INFLECT = "spell+inflect"

    @property
    def has_spell(self) -> bool:
        return self in (TagsetKind.SPELL, TagsetKind.SPELL_INFLECT)

    @property
    def has_inflect(self) -> bool:
        return self in (TagsetKind.INFLECT, TagsetKind.SPELL_INFLECT)


def closed_class_tags(kind: TagsetKind) -> tuple[EditTag, ...]:
    """The always-kept tag inventory for a tagset kind, in canonical order."""
    out: list[EditTag] = [KEEP, DELETE]
    if kind.has_spell:
        out.append(SPELL)
    if kind.has_inflect:
        out.extend(Inflect(p) for p in PtbPos)
    out.extend(Case(k) for k in CaseKind)
    out.extend(Merge(k) for k in MergeKind)
    out.append(SPLIT_HYPHEN)
    if not kind.has_inflect:
        out.extend(NounNumber(k) for k in NumberKind)
        out.extend(
            VerbForm(a, b)
            for a, b in itertools.permutations(VERB_FORM_CODES, 2)
        )
    return tuple(out)


def tag_allowed(tag: EditTag, kind: TagsetKind) -> bool:
    if isinstance(tag, Spell):
        return kind.has_spell
    if isinstance(tag, Inflect):
        return kind.has_inflect
    if isinstance(tag, (NounNumber, VerbForm)):
        return not kind.has_inflect
    return True


@dataclass(frozen=True)
class TagVocabulary:
    kind: TagsetKind
    entries: tuple[EditTag, ...]
    size_limit: int
    _ids: dict[EditTag, int] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        if not self.entries or self.entries[0] != KEEP:
            raise TagError("vocabulary entry 0 must be $KEEP")
        if len(self.entries) > self.size_limit:
            raise TagError(
                f"{len(self.entries)} entries exceed size limit {self.size_limit}"
            )
        ids: dict[EditTag, int] = {}
        for i, tag in enumerate(self.entries):
            if tag in ids:
                raise TagError(f"duplicate vocabulary entry: {format_tag(tag)}")
            if not tag_allowed(tag, self.kind):
                raise TagError(
                    f"tag {format_tag(tag)} not allowed in tagset {self.kind.value}"
                )
            ids[tag] = i
        object.__setattr__(self, "_ids", ids)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, tag: EditTag) -> bool:
        return tag in self._ids

    def id_of(self, tag: EditTag) -> int:
        try:
            return self._ids[tag]
        except KeyError:
            raise TagError(f"tag not in vocabulary: {format_tag(tag)}") from None

    def tag_at(self, tag_id: int) -> EditTag:
        return self.entries[tag_id]

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(f"#kind={self.kind.value}\n")
            f.write(f"#size_limit={self.size_limit}\n")
            for tag in self.entries:
                f.write(format_tag(tag) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "TagVocabulary":
        kind = None
        size_limit = None
        entries: list[EditTag] = []
        with open(path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                if line.startswith("#"):
                    key, _, value = line[1:].partition("=")
                    if key == "kind":
                        kind = TagsetKind(value)
                    elif key == "size_limit":
                        size_limit = int(value)
                    continue
                try:
                    entries.append(parse_tag(line))
                except TagError as e:
                    raise TagError(f"{path}:{lineno}: {e}") from None
        if kind is None or size_limit is None:
            raise TagError(f"{path}: missing #kind= or #size_limit= header")
        return cls(kind=kind, entries=tuple(entries), size_limit=size_limit)
