"""Locations of the shipped dictionary and lexicon data files.

The ``GECKIT_DATA_DIR`` environment variable overrides the packaged data
directory, so deployments can swap in their own word lists without code
changes.
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

DATA_ENV = "GECKIT_DATA_DIR"

FREQUENCY_DICTIONARY = "frequency_dictionary.txt"
INFLECTION_LEXICON = "inflections.tsv"


def data_path(name: str) -> Path:
    env = os.environ.get(DATA_ENV)
    if env:
        return Path(env) / name
    return Path(str(resources.files("geckit") / "data" / name))


def default_dictionary_path() -> Path:
    return data_path(FREQUENCY_DICTIONARY)


def default_lexicon_path() -> Path:
    return data_path(INFLECTION_LEXICON)
