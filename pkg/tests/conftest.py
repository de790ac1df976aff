from __future__ import annotations

from pathlib import Path

import pytest

from geckit.data import default_dictionary_path, default_lexicon_path
from geckit.inflect import InflectionEngine, VerbFormTable, load_lexicon
from geckit.preprocess import SentencePair, read_parallel
from geckit.score import GoldSentence, load_m2
from geckit.speller import SpellDictionary, build_dictionary, load_frequency_dictionary

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def spell_dict() -> SpellDictionary:
    """The full shipped dictionary (index build takes a few seconds)."""
    return load_frequency_dictionary(default_dictionary_path())


@pytest.fixture(scope="session")
def engine() -> InflectionEngine:
    return InflectionEngine(load_lexicon(default_lexicon_path()))


@pytest.fixture(scope="session")
def verb_forms() -> VerbFormTable:
    return VerbFormTable.from_file(default_lexicon_path())


@pytest.fixture(scope="session")
def small_dict() -> SpellDictionary:
    """A tiny dictionary for fast unit tests with known frequencies."""
    entries = [
        ("believe", 1000),
        ("receive", 900),
        ("their", 5000),
        ("there", 4000),
        ("cat", 300),
        ("cats", 120),
        ("hat", 290),
        ("bat", 100),
        ("apple", 50),
        ("banana", 40),
        ("run", 800),
        ("running", 350),
        ("you", 9000),
        # function words and corpus vocabulary for the CLI fixtures
        ("the", 8000),
        ("i", 7000),
        ("we", 6000),
        ("me", 2500),
        ("all", 3000),
        ("good", 2000),
        ("here", 1500),
        ("one", 1800),
        ("saw", 500),
        ("activity", 400),
        ("activities", 150),
        ("ran", 250),
        ("went", 260),
        ("goes", 240),
    ]
    return build_dictionary(entries, max_edit_distance=2)


@pytest.fixture(scope="session")
def fixture_pairs() -> list[SentencePair]:
    return list(read_parallel(DATA / "fixture.src", DATA / "fixture.tgt"))


@pytest.fixture(scope="session")
def fixture_gold() -> list[GoldSentence]:
    return load_m2(DATA / "fixture.m2")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One visible pass/fail line per acceptance criterion."""
    lines = []
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" in nodeid and "::" in nodeid:
                lines.append((nodeid.split("::")[-1], status.upper()))
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for name, status in sorted(lines):
            terminalreporter.write_line(f"{status:6s} {name}")
