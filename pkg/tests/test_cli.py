import json

import pandas as pd
import pytest

from qna.cli import build_parser, main
from qna.commands import common


def run(*argv):
    return main([str(a) for a in argv])


def test_unknown_subcommand_exits_with_usage_error():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["plot"])
    assert exc.value.code == 2


def test_similarity_writes_one_row_per_author(clean_env, toy_corpus, tmp_path):
    out = tmp_path / "out"
    assert run("similarity", "--corpus", toy_corpus, "--out", out) == 0
    coords = pd.read_csv(out / "coordinates.csv")
    assert list(coords.columns) == ["doc_id", "dim1", "dim2"]
    assert sorted(coords["doc_id"]) == ["Ann Rose", "Bea Sea", "Cy Night"]
    assert (out / "similarity.svg").is_file()
    assert not [p for p in out.iterdir() if p.name.startswith(".staging")]


def test_reruns_are_byte_identical(clean_env, toy_corpus, tmp_path):
    for name in ("one", "two"):
        assert run("similarity", "--corpus", toy_corpus, "--out", tmp_path / name, "--seed", 5) == 0
    for name in ("coordinates.csv", "distances.csv", "mds.json"):
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()


def test_missing_corpus_leaves_no_output(clean_env, tmp_path, capsys):
    out = tmp_path / "out"
    assert run("dtm", "--corpus", tmp_path / "nowhere", "--out", out) == 2
    assert list(out.iterdir()) == []
    err = capsys.readouterr().err
    assert err.startswith("qna dtm: error:")
    assert len(err.strip().splitlines()) == 1


def test_invalid_setting_is_reported(clean_env, toy_corpus, tmp_path, capsys):
    assert run("dtm", "--corpus", toy_corpus, "--out", tmp_path / "out", "--max-doc-fraction", 2) == 2
    assert "max_doc_fraction" in capsys.readouterr().err


def test_dtm_and_rates(clean_env, toy_corpus, tmp_path):
    out = tmp_path / "out"
    assert run("dtm", "--corpus", toy_corpus, "--out", out) == 0
    rates = pd.read_csv(out / "rates.csv", index_col="doc_id")
    assert "rose" in rates.columns
    assert "the" not in rates.columns
    assert rates.loc["Ann Rose", "rose"] > 0
    assert rates.loc["Bea Sea", "rose"] == 0


def test_clean_mirrors_corpus(clean_env, toy_corpus, tmp_path):
    out = tmp_path / "out"
    assert run("clean", "--corpus", toy_corpus, "--out", out) == 0
    assert (out / "cleaned" / "rose.txt").is_file()
    assert (out / "cleaned" / "rose.txt.report.json").is_file()
    assert json.loads((out / "ingest_errors.json").read_text(encoding="utf-8")) == []


def test_profile_of_loose_text_without_wordnet(clean_env, tmp_path):
    poem = tmp_path / "poem.txt"
    poem.write_text("O true love, true love, my true love is sweet.\n", encoding="utf-8")
    out = tmp_path / "out"
    assert run("profile", "--text", poem, "--out", out, "--words", "love") == 0
    profiles = json.loads((out / "profiles.json").read_text(encoding="utf-8"))
    assert profiles["poem"]["surface"]["token_count"] == 10
    assert profiles["poem"]["pos"] is None
    assert (out / "dispersion_poem.svg").is_file()


def test_distinct_needs_two_authors(clean_env, toy_corpus, tmp_path, capsys):
    assert run("distinct", "--corpus", toy_corpus, "--out", tmp_path / "out", "--authors", "Ann Rose") == 2
    assert "--authors" in capsys.readouterr().err


def test_distinct_pair(clean_env, toy_corpus, tmp_path):
    out = tmp_path / "out"
    assert run("distinct", "--corpus", toy_corpus, "--out", out, "--authors", "Ann Rose", "Bea Sea",
               "--words", "rose", "sea") == 0
    unique = pd.read_csv(out / "unique_words.csv")
    assert set(unique.loc[unique["unique_to"] == "Ann Rose", "word"]) >= {"rose"}
    assert set(pd.read_csv(out / "word_rates.csv").columns) >= {"doc_id", "rose", "sea"}


def test_affect_with_mini_wordnet(clean_env, mini_wordnet_dir, tmp_path):
    poem = tmp_path / "dogs.txt"
    poem.write_text("The dog and the cat and the happiness of love.\n", encoding="utf-8")
    out = tmp_path / "out"
    assert run("affect", "--text", poem, "--wordnet", mini_wordnet_dir, "--out", out) == 0
    stats = json.loads((out / "affect.json").read_text(encoding="utf-8"))
    assert stats["dogs"]["most_positive"] == "happiness"
    assert (out / "affect_pca_dogs.csv").is_file()


def test_invalid_label_file_is_a_one_line_error(clean_env, mini_wordnet_dir, tmp_path, capsys):
    poem = tmp_path / "dogs.txt"
    poem.write_text("The dog and the cat.\n", encoding="utf-8")
    labels = tmp_path / "labels.json"
    labels.write_text(json.dumps({"pos": ["happiness"], "neg": ["cat"], "aro": ["dog"]}), encoding="utf-8")
    settings = tmp_path / "run.env"
    settings.write_text(f"affect_labels={labels}\n", encoding="utf-8")

    out = tmp_path / "out"
    assert run("affect", "--text", poem, "--wordnet", mini_wordnet_dir, "--out", out, "--config", settings) == 2
    err = capsys.readouterr().err
    assert err.startswith("qna affect: error:")
    assert "labels.json" in err
    assert len(err.strip().splitlines()) == 1
    assert list(out.iterdir()) == []


def test_surprisal_of_loose_files(clean_env, tmp_path):
    train = tmp_path / "train.txt"
    train.write_text("The cat sat. The dog ran.\n", encoding="utf-8")
    out = tmp_path / "out"
    assert run("surprisal", "--train", train, "--score", train, "--out", out) == 0
    per_token = pd.read_csv(out / "surprisal_train.csv")
    assert list(per_token.columns) == ["position", "token", "surprisal"]
    assert per_token["token"].tolist() == ["the", "cat", "sat", "the", "dog", "ran"]


def test_report_runs_every_corpus_step(clean_env, toy_corpus, tmp_path):
    out = tmp_path / "out"
    assert run("report", "--corpus", toy_corpus, "--out", out, "--topics", 2) == 0
    summary = (out / "summary.txt").read_text(encoding="utf-8")
    for step in ("clean", "dtm", "similarity", "topics", "profile", "sonority"):
        assert f"[{step}]" in summary
        assert (out / step).is_dir()
    assert "[affect]" not in summary


def test_report_reads_the_corpus_once(clean_env, toy_corpus, tmp_path, monkeypatch):
    calls = []
    original = common.ingest_directory

    def counting(*args, **kwargs):
        calls.append(args)
        return original(*args, **kwargs)

    monkeypatch.setattr(common, "ingest_directory", counting)
    assert run("report", "--corpus", toy_corpus, "--out", tmp_path / "report", "--topics", 2) == 0
    assert len(calls) == 1

    # separate commands start from a fresh read
    assert run("dtm", "--corpus", toy_corpus, "--out", tmp_path / "a") == 0
    assert run("dtm", "--corpus", toy_corpus, "--out", tmp_path / "b") == 0
    assert len(calls) == 3


def test_bayes_on_short_segments(clean_env, toy_corpus, tmp_path):
    out = tmp_path / "out"
    assert run("bayes", "--corpus", toy_corpus, "--out", out, "--authors", "Ann Rose", "Bea Sea",
               "--words", "rose", "sea", "--segment-len", 2) == 0
    ranked = pd.read_csv(out / "bayes.csv")
    assert ranked["word"].tolist() == ["rose", "sea"]
    assert (out / "posteriors" / "rose.csv").is_file()
    summary = json.loads((out / "bayes.json").read_text(encoding="utf-8"))
    assert summary["authors"] == ["Ann Rose", "Bea Sea"]


def test_sonority_table(clean_env, toy_corpus, tmp_path):
    out = tmp_path / "out"
    assert run("sonority", "--corpus", toy_corpus, "--out", out, "--words", "SKUNK") == 0
    assert len(pd.read_csv(out / "sonority.csv")) == 3
    assert pd.read_csv(out / "sonority_words.csv")["sonority"].tolist() == [3.6]
