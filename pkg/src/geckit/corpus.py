"""Labeled sentences and the JSONL corpus format.

One JSON object per line with fields ``src`` (tokens, including the
leading ``$START`` placeholder when present) and ``tags`` (canonical tag
strings, same length).  An optional ``tgt`` field carries the reference
tokens so round-trip checks stay possible after the pair files are gone.
Serialisation is canonical: fixed key order, compact separators, no ASCII
escaping, so identical corpora are byte-identical on disk.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .errors import DataError
from .tags import EditTag, check_token, format_tag, parse_tag, START_TOKEN


@dataclass(frozen=True)
class LabeledSentence:
    source: tuple[str, ...]
    tags: tuple[EditTag, ...]
    target: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.source) != len(self.tags):
            raise DataError(
                f"{len(self.source)} tokens but {len(self.tags)} tags"
            )
        for tok in self.source:
            check_token(tok)
        if self.target is not None:
            for tok in self.target:
                check_token(tok)

    @property
    def has_start(self) -> bool:
        return bool(self.source) and self.source[0] == START_TOKEN


def to_json_line(sentence: LabeledSentence) -> str:
    obj: dict = {
        "src": list(sentence.source),
        "tags": [format_tag(t) for t in sentence.tags],
    }
    if sentence.target is not None:
        obj["tgt"] = list(sentence.target)
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def from_json_line(line: str) -> LabeledSentence:
    obj = json.loads(line)
    if not isinstance(obj, dict) or "src" not in obj or "tags" not in obj:
        raise DataError("corpus row must be an object with src and tags")
    target = tuple(obj["tgt"]) if "tgt" in obj else None
    return LabeledSentence(
        source=tuple(obj["src"]),
        tags=tuple(parse_tag(t) for t in obj["tags"]),
        target=target,
    )


def read_labeled_jsonl(path: str | Path) -> Iterator[LabeledSentence]:
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                yield from_json_line(line)
            except (DataError, ValueError) as e:
                raise DataError(f"{path}:{lineno}: {e}") from None


def write_labeled_jsonl(
    path: str | Path, sentences: Iterable[LabeledSentence]
) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as f:
        for s in sentences:
            f.write(to_json_line(s) + "\n")
            n += 1
    return n
