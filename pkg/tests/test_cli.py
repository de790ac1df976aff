from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np
import pytest

from geckit.cli import main
from geckit.corpus import read_labeled_jsonl
from geckit.infer import BaselineSpellTagger, write_distributions
from geckit.tags import START_TOKEN
from geckit.vocab import TagsetKind, TagVocabulary, closed_class_tags

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="module")
def small_data(tmp_path_factory, small_dict, engine):
    """A miniature corpus plus dictionary/lexicon files for CLI runs."""
    root = tmp_path_factory.mktemp("cli")

    (root / "dict.txt").write_text(
        "".join(f"{w} {f}\n" for w, f in sorted(small_dict.words.items()))
    )
    (root / "lexicon.tsv").write_text(
        "activity\tNNS\tactivities\n"
        "cat\tNNS\tcats\n"
        "run\tVBD\tran\n"
        "run\tVBZ\truns\n"
        "run\tVBG\trunning\n"
        "go\tVBD\twent\n"
        "go\tVBZ\tgoes\n"
    )
    (root / "corpus.src").write_text(
        "I beleive you .\n"
        "the cat run .\n"
        "we saw activity there .\n"
        "all good here .\n"
    )
    (root / "corpus.tgt").write_text(
        "I believe you .\n"
        "the cat ran .\n"
        "we saw activities there .\n"
        "all good here .\n"
    )
    (root / "gold.m2").write_text(
        "S I beleive you .\n"
        "A 1 2|||R:SPELL|||believe|||REQUIRED|||-NONE-|||0\n"
        "\n"
        "S the cat run .\n"
        "A 2 3|||R:VERB:TENSE|||ran|||REQUIRED|||-NONE-|||0\n"
        "\n"
        "S we saw activity there .\n"
        "A 2 3|||R:NOUN:NUM|||activities|||REQUIRED|||-NONE-|||0\n"
        "\n"
        "S all good here .\n"
        "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||0\n"
    )
    return root


def run(args: list[str], capsys) -> dict:
    code = main(args)
    out = capsys.readouterr().out
    assert code == 0, out
    report = json.loads(out)
    assert report["schema"] == 1
    return report


class TestPreprocess:
    def test_spell_inflect_tagset(self, small_data, capsys, tmp_path):
        out = tmp_path / "labeled.jsonl"
        report = run(
            [
                "preprocess",
                "--src", str(small_data / "corpus.src"),
                "--tgt", str(small_data / "corpus.tgt"),
                "--tagset", "spell+inflect",
                "--dict", str(small_data / "dict.txt"),
                "--lexicon", str(small_data / "lexicon.tsv"),
                "-o", str(out),
            ],
            capsys,
        )
        assert report["kept"] == 4 and report["dropped"] == 0
        text = out.read_text()
        assert "$SPELL" in text
        assert "$INFLECT_VBD" in text
        assert "$INFLECT_NNS" in text
        rows = list(read_labeled_jsonl(out))
        assert all(r.source[0] == START_TOKEN for r in rows)

    def test_preprocess_from_m2(self, small_data, capsys, tmp_path):
        out = tmp_path / "labeled.jsonl"
        report = run(
            [
                "preprocess",
                "--m2", str(small_data / "gold.m2"),
                "--tagset", "basetags",
                "--dict", str(small_data / "dict.txt"),
                "--lexicon", str(small_data / "lexicon.tsv"),
                "-o", str(out),
            ],
            capsys,
        )
        assert report["kept"] == 4
        assert "$REPLACE_believe" in out.read_text()

    def test_vocab_out(self, small_data, capsys, tmp_path):
        out = tmp_path / "labeled.jsonl"
        vocab_path = tmp_path / "vocab.txt"
        report = run(
            [
                "preprocess",
                "--src", str(small_data / "corpus.src"),
                "--tgt", str(small_data / "corpus.tgt"),
                "--tagset", "spell+inflect",
                "--dict", str(small_data / "dict.txt"),
                "--lexicon", str(small_data / "lexicon.tsv"),
                "-o", str(out),
                "--vocab-out", str(vocab_path),
                "--vocab-size", "100",
            ],
            capsys,
        )
        vocab = TagVocabulary.load(vocab_path)
        assert vocab.kind is TagsetKind.SPELL_INFLECT
        assert report["coverage"] == 1.0

    def test_fixture_corpus_with_shipped_data(self, capsys, tmp_path):
        # the committed corpus through the real dictionary and lexicon:
        # misspellings become $SPELL, inflection errors $INFLECT_, and
        # nothing is dropped
        out = tmp_path / "labeled.jsonl"
        report = run(
            [
                "preprocess",
                "--src", str(DATA / "fixture.src"),
                "--tgt", str(DATA / "fixture.tgt"),
                "--tagset", "spell+inflect",
                "-o", str(out),
            ],
            capsys,
        )
        assert report["kept"] == 1000 and report["dropped"] == 0
        text = out.read_text()
        assert "$SPELL" in text
        assert "$INFLECT_NNS" in text and "$INFLECT_VBD" in text

    def test_determinism_across_threads(self, small_data, capsys, tmp_path):
        outs = []
        for threads in ("1", "4"):
            out = tmp_path / f"labeled{threads}.jsonl"
            run(
                [
                    "preprocess",
                    "--src", str(small_data / "corpus.src"),
                    "--tgt", str(small_data / "corpus.tgt"),
                    "--tagset", "spell+inflect",
                    "--dict", str(small_data / "dict.txt"),
                    "--lexicon", str(small_data / "lexicon.tsv"),
                    "--threads", threads,
                    "-o", str(out),
                ],
                capsys,
            )
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]


class TestApplyAndStats:
    @pytest.fixture()
    def labeled(self, small_data, capsys, tmp_path):
        out = tmp_path / "labeled.jsonl"
        run(
            [
                "preprocess",
                "--src", str(small_data / "corpus.src"),
                "--tgt", str(small_data / "corpus.tgt"),
                "--tagset", "spell+inflect",
                "--dict", str(small_data / "dict.txt"),
                "--lexicon", str(small_data / "lexicon.tsv"),
                "-o", str(out),
            ],
            capsys,
        )
        return out

    def test_apply_reproduces_targets(self, small_data, labeled, capsys, tmp_path):
        out = tmp_path / "corrected.txt"
        run(
            [
                "apply",
                "--input", str(labeled),
                "--dict", str(small_data / "dict.txt"),
                "--lexicon", str(small_data / "lexicon.tsv"),
                "-o", str(out),
            ],
            capsys,
        )
        assert out.read_text() == (small_data / "corpus.tgt").read_text()

    def test_stats(self, small_data, labeled, capsys):
        report = run(
            [
                "stats",
                "--input", str(labeled),
                "--dict", str(small_data / "dict.txt"),
                "--lexicon", str(small_data / "lexicon.tsv"),
            ],
            capsys,
        )
        assert report["sentences"] == 4
        assert report["round_trip_failures"] == 0
        assert report["tag_histogram"]["$SPELL"] == 1
        assert report["distinct_tags"] >= 4


class TestScore:
    def test_perfect_hypothesis(self, small_data, capsys):
        report = run(
            [
                "score",
                "--hyp", str(small_data / "corpus.tgt"),
                "--gold", str(small_data / "gold.m2"),
            ],
            capsys,
        )
        assert report["f_beta"] == 1.0
        assert report["per_category"]["R:SPELL"]["tp"] == 1

    def test_category_filter(self, small_data, capsys):
        report = run(
            [
                "score",
                "--hyp", str(small_data / "corpus.tgt"),
                "--gold", str(small_data / "gold.m2"),
                "--categories", "R:SPELL",
            ],
            capsys,
        )
        assert report["tp"] == 1 and report["fn"] == 0

    def test_category_csv(self, small_data, capsys, tmp_path):
        path = tmp_path / "cats.csv"
        run(
            [
                "score",
                "--hyp", str(small_data / "corpus.tgt"),
                "--gold", str(small_data / "gold.m2"),
                "--category-csv", str(path),
            ],
            capsys,
        )
        rows = list(csv.DictReader(path.open()))
        assert {r["category"] for r in rows} == {
            "R:SPELL",
            "R:VERB:TENSE",
            "R:NOUN:NUM",
        }


class TestEnsemble:
    def test_two_of_three(self, small_data, capsys, tmp_path):
        (tmp_path / "h1.txt").write_text("I believe you .\n")
        (tmp_path / "h2.txt").write_text("I believe you .\n")
        (tmp_path / "h3.txt").write_text("I beleive you .\n")
        (tmp_path / "src.txt").write_text("I beleive you .\n")
        out = tmp_path / "voted.txt"
        report = run(
            [
                "ensemble",
                "--source", str(tmp_path / "src.txt"),
                "--hyp", str(tmp_path / "h1.txt"), str(tmp_path / "h2.txt"),
                str(tmp_path / "h3.txt"),
                "-o", str(out),
            ],
            capsys,
        )
        assert out.read_text() == "I believe you .\n"
        assert report["threshold"] == 2


class TestInferAndTune:
    @pytest.fixture()
    def infer_inputs(self, small_data, small_dict, tmp_path):
        vocab = TagVocabulary(
            TagsetKind.SPELL, closed_class_tags(TagsetKind.SPELL), 5000
        )
        vocab_path = tmp_path / "vocab.txt"
        vocab.save(vocab_path)
        tagger = BaselineSpellTagger(small_dict, vocab)
        sources = [
            line.split()
            for line in (small_data / "corpus.src").read_text().splitlines()
        ]
        dists = [tagger([START_TOKEN] + s) for s in sources]
        dist_path = tmp_path / "dists.jsonl"
        write_distributions(dist_path, dists)
        return vocab_path, dist_path

    def test_infer(self, small_data, infer_inputs, capsys, tmp_path):
        vocab_path, dist_path = infer_inputs
        out = tmp_path / "corrected.txt"
        report = run(
            [
                "infer",
                "--source", str(small_data / "corpus.src"),
                "--distributions", str(dist_path),
                "--vocab", str(vocab_path),
                "--cb", "0.0",
                "--mep", "0.0",
                "--dict", str(small_data / "dict.txt"),
                "-o", str(out),
            ],
            capsys,
        )
        lines = out.read_text().splitlines()
        assert lines[0] == "I believe you ."
        assert report["changed"] == 1

    def test_tune_grid_shape(self, small_data, infer_inputs, capsys, tmp_path):
        vocab_path, dist_path = infer_inputs
        csv_path = tmp_path / "grid.csv"
        report = run(
            [
                "tune",
                "--dev", str(small_data / "corpus.src"), str(small_data / "gold.m2"),
                "--distributions", str(dist_path),
                "--vocab", str(vocab_path),
                "--dict", str(small_data / "dict.txt"),
                "--csv", str(csv_path),
            ],
            capsys,
        )
        assert report["cells"] == 2116
        rows = list(csv.DictReader(csv_path.open()))
        assert len(rows) == 2116
        assert {r["confidence_bias"] for r in rows} == {
            f"{v:.2f}" for v in np.arange(0, 46) * 0.02
        }

    def test_distribution_length_mismatch_is_data_error(
        self, small_data, infer_inputs, capsys, tmp_path
    ):
        vocab_path, dist_path = infer_inputs
        (tmp_path / "short.txt").write_text("one\n")
        code = main(
            [
                "infer",
                "--source", str(tmp_path / "short.txt"),
                "--distributions", str(dist_path),
                "--vocab", str(vocab_path),
                "-o", str(tmp_path / "x.txt"),
            ]
        )
        capsys.readouterr()
        assert code == 2


class TestDataDirEnvVar:
    def test_env_var_overrides_packaged_data(
        self, small_data, capsys, tmp_path, monkeypatch
    ):
        data_dir = tmp_path / "datadir"
        data_dir.mkdir()
        (data_dir / "frequency_dictionary.txt").write_text(
            (small_data / "dict.txt").read_text()
        )
        (data_dir / "inflections.tsv").write_text(
            (small_data / "lexicon.tsv").read_text()
        )
        monkeypatch.setenv("GECKIT_DATA_DIR", str(data_dir))
        out = tmp_path / "labeled.jsonl"
        report = run(
            [
                "preprocess",
                "--src", str(small_data / "corpus.src"),
                "--tgt", str(small_data / "corpus.tgt"),
                "--tagset", "spell+inflect",
                "-o", str(out),
            ],
            capsys,
        )
        assert report["kept"] == 4
        assert "$SPELL" in out.read_text()


class TestExitCodes:
    def test_usage_error(self, capsys):
        assert main(["preprocess", "--tagset", "nope", "-o", "x"]) == 1
        capsys.readouterr()

    def test_missing_subcommand(self, capsys):
        assert main([]) == 1
        capsys.readouterr()

    def test_data_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.m2"
        bad.write_text("garbage line\n")
        hyp = tmp_path / "h.txt"
        hyp.write_text("a\n")
        assert main(["score", "--hyp", str(hyp), "--gold", str(bad)]) == 2
        capsys.readouterr()

    def test_missing_file(self, capsys, tmp_path):
        assert (
            main(["score", "--hyp", str(tmp_path / "nope"), "--gold", str(tmp_path / "no.m2")])
            == 2
        )
        capsys.readouterr()
