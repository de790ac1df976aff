"""Edit tags and their canonical text syntax.

Every token of an input sentence is labelled with exactly one edit tag.
Applying the tags (see :mod:`geckit.apply`) produces the corrected token
sequence.  Tags serialise to a flat string form (``$KEEP``,
``$REPLACE_believe``, ``$INFLECT_NNS``, ...) that round-trips bit-exactly
through :func:`parse_tag` / :func:`format_tag`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .errors import DataError

# Synthetic sentence-start token.  It carries APPEND edits for insertions
# before the first real token and never appears in corrected output.
START_TOKEN = "$START"


class TagError(DataError):
    """Malformed tag string or invalid tag payload."""


class PtbPos(str, Enum):
    """The 14 inflectable Penn Treebank POS tags.

    Declaration order is load-bearing: it is the fixed order in which
    inflection targets are tried when recovering a POS from a word pair.
    """

    NN = "NN"
    NNS = "NNS"
    VB = "VB"
    VBP = "VBP"
    VBZ = "VBZ"
    VBD = "VBD"
    VBG = "VBG"
    VBN = "VBN"
    JJ = "JJ"
    JJR = "JJR"
    JJS = "JJS"
    RB = "RB"
    RBR = "RBR"
    RBS = "RBS"


INFLECTION_POS_ORDER: tuple[PtbPos, ...] = tuple(PtbPos)

# Verb form codes used by the dictionary-based verb transform of the base
# tagset.  Ordered pairs of distinct codes form the closed inventory of 20
# verb-form tags.
VERB_FORM_CODES: tuple[PtbPos, ...] = (
    PtbPos.VB,
    PtbPos.VBZ,
    PtbPos.VBD,
    PtbPos.VBG,
    PtbPos.VBN,
)


class CoarsePos(str, Enum):
    NOUN = "noun"
    VERB = "verb"
    ADJ = "adj"
    ADV = "adv"


_COARSE_BY_PREFIX = {
    "NN": CoarsePos.NOUN,
    "VB": CoarsePos.VERB,
    "JJ": CoarsePos.ADJ,
    "RB": CoarsePos.ADV,
}


def coarse_of(pos: PtbPos) -> CoarsePos:
    return _COARSE_BY_PREFIX[pos.value[:2]]


class CaseKind(str, Enum):
    CAPITAL = "CAPITAL"  # first char upper, rest lower
    CAPITAL_FIRST = "CAPITAL_FIRST"  # first char upper, rest untouched
    LOWER = "LOWER"
    UPPER = "UPPER"


class MergeKind(str, Enum):
    SPACE = "SPACE"  # join with ""
    HYPHEN = "HYPHEN"  # join with "-"


class NumberKind(str, Enum):
    SINGULAR = "SINGULAR"
    PLURAL = "PLURAL"


def check_token(surface: str) -> str:
    """Validate a token surface: non-empty, no internal whitespace."""
    if not surface:
        raise TagError("token surface must be non-empty")
    if any(c.isspace() for c in surface):
        raise TagError(f"token surface contains whitespace: {surface!r}")
    return surface


@dataclass(frozen=True)
class Keep:
    def __str__(self) -> str:
        return "$KEEP"


@dataclass(frozen=True)
class Delete:
    def __str__(self) -> str:
        return "$DELETE"


@dataclass(frozen=True)
class Append:
    word: str

    def __post_init__(self) -> None:
        check_token(self.word)

    def __str__(self) -> str:
        return f"$APPEND_{self.word}"


@dataclass(frozen=True)
class Replace:
    word: str

    def __post_init__(self) -> None:
        check_token(self.word)

    def __str__(self) -> str:
        return f"$REPLACE_{self.word}"


@dataclass(frozen=True)
class Spell:
    def __str__(self) -> str:
        return "$SPELL"


@dataclass(frozen=True)
class Inflect:
    pos: PtbPos

    def __str__(self) -> str:
        return f"$INFLECT_{self.pos.value}"


@dataclass(frozen=True)
class Case:
    kind: CaseKind

    def __str__(self) -> str:
        return f"$CASE_{self.kind.value}"


@dataclass(frozen=True)
class Merge:
    kind: MergeKind

    def __str__(self) -> str:
        return f"$MERGE_{self.kind.value}"


@dataclass(frozen=True)
class SplitHyphen:
    def __str__(self) -> str:
        return "$SPLIT_HYPHEN"


@dataclass(frozen=True)
class NounNumber:
    kind: NumberKind

    def __str__(self) -> str:
        return f"$NOUN_NUMBER_{self.kind.value}"


@dataclass(frozen=True)
class VerbForm:
    src: PtbPos
    dst: PtbPos

    def __post_init__(self) -> None:
        if self.src not in VERB_FORM_CODES or self.dst not in VERB_FORM_CODES:
            raise TagError(f"not a verb form code pair: {self.src}, {self.dst}")
        if self.src == self.dst:
            raise TagError("verb form transform must change the form")

    def __str__(self) -> str:
        return f"$VERB_FORM_{self.src.value}_{self.dst.value}"


EditTag = Union[
    Keep,
    Delete,
    Append,
    Replace,
    Spell,
    Inflect,
    Case,
    Merge,
    SplitHyphen,
    NounNumber,
    VerbForm,
]

KEEP = Keep()
DELETE = Delete()
SPELL = Spell()
SPLIT_HYPHEN = SplitHyphen()


def format_tag(tag: EditTag) -> str:
    return str(tag)


def parse_tag(text: str) -> EditTag:
    """Parse the canonical tag syntax. Inverse of :func:`format_tag`."""
    if text == "$KEEP":
        return KEEP
    if text == "$DELETE":
        return DELETE
    if text == "$SPELL":
        return SPELL
    if text == "$SPLIT_HYPHEN":
        return SPLIT_HYPHEN
    if text.startswith("$APPEND_"):
        return Append(text[len("$APPEND_") :])
    if text.startswith("$REPLACE_"):
        return Replace(text[len("$REPLACE_") :])
    if text.startswith("$INFLECT_"):
        code = text[len("$INFLECT_") :]
        try:
            return Inflect(PtbPos(code))
        except ValueError:
            raise TagError(f"unknown POS in tag: {text!r}") from None
    if text.startswith("$CASE_"):
        code = text[len("$CASE_") :]
        try:
            return Case(CaseKind(code))
        except ValueError:
            raise TagError(f"unknown case kind in tag: {text!r}") from None
    if text.startswith("$MERGE_"):
        code = text[len("$MERGE_") :]
        try:
            return Merge(MergeKind(code))
        except ValueError:
            raise TagError(f"unknown merge kind in tag: {text!r}") from None
    if text.startswith("$NOUN_NUMBER_"):
        code = text[len("$NOUN_NUMBER_") :]
        try:
            return NounNumber(NumberKind(code))
        except ValueError:
            raise TagError(f"unknown number kind in tag: {text!r}") from None
    if text.startswith("$VERB_FORM_"):
        rest = text[len("$VERB_FORM_") :]
        parts = rest.split("_")
        if len(parts) != 2:
            raise TagError(f"malformed verb form tag: {text!r}")
        try:
            return VerbForm(PtbPos(parts[0]), PtbPos(parts[1]))
        except (ValueError, TagError):
            raise TagError(f"malformed verb form tag: {text!r}") from None
    raise TagError(f"unrecognised tag: {text!r}")
