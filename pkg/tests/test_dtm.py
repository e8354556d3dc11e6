import numpy as np
import pytest

from qna.dtm import build_dtm, load_dtm, rates_per_1000, save_dtm
from qna.errors import EmptyDocumentError, InvalidArgumentError
from qna.text import TokenStream, tokenize


def test_direct_counts():
    vocab, m = build_dtm([tokenize("a b a", "d1"), tokenize("b c", "d2")], max_doc_fraction=1.0)
    assert vocab.terms == ["a", "b", "c"]
    np.testing.assert_array_equal(m.counts.toarray(), [[2, 1, 0], [0, 1, 1]])
    assert m.rows == ["d1", "d2"]


def test_term_in_every_document_is_pruned():
    streams = [tokenize(f"common word{chr(97 + i % 26)}", f"d{i}") for i in range(47)]
    vocab, _ = build_dtm(streams)
    assert "common" not in vocab


def test_single_occurrence_is_kept():
    vocab, m = build_dtm([tokenize("rare", "d1"), tokenize("other", "d2"), tokenize("more", "d3")])
    assert "rare" in vocab
    assert m.counts[m.row("d1"), vocab.index["rare"]] == 1


def test_min_count_prunes_rare_terms():
    vocab, _ = build_dtm([tokenize("a a b", "d1"), tokenize("c", "d2")], min_count=2)
    assert vocab.terms == ["a"]


def test_counts_match_stream_lengths_without_pruning():
    streams = [tokenize("x y z x", "d1"), tokenize("y y", "d2")]
    _, m = build_dtm(streams, max_doc_fraction=1.0)
    np.testing.assert_array_equal(np.asarray(m.counts.sum(axis=1)).ravel(), [4, 2])


def test_all_empty_documents_give_empty_vocabulary():
    vocab, m = build_dtm([TokenStream(doc_id="d1"), TokenStream(doc_id="d2")])
    assert len(vocab) == 0
    assert m.shape == (2, 0)


def test_invalid_arguments():
    with pytest.raises(InvalidArgumentError):
        build_dtm([])
    with pytest.raises(InvalidArgumentError):
        build_dtm([tokenize("a")], max_doc_fraction=0)
    with pytest.raises(InvalidArgumentError):
        build_dtm([tokenize("a")], min_count=0)


def test_rate_per_thousand():
    stream = tokenize(" ".join(["love"] * 5 + ["filler"] * 995), "d1")
    vocab, m = build_dtm([stream, tokenize("other", "d2")])
    rates = rates_per_1000(m, vocab)
    assert rates.loc["d1", "love"] == pytest.approx(5.0)
    assert rates.loc["d2", "love"] == 0


def test_pre_stopword_totals_change_denominator():
    vocab, m = build_dtm([tokenize("love", "d1"), tokenize("hate", "d2")], token_totals=[4, 1])
    rates = rates_per_1000(m, vocab)
    assert rates.loc["d1", "love"] == pytest.approx(250.0)


def test_rates_of_empty_document_raise():
    vocab, m = build_dtm([tokenize("love", "d1"), TokenStream(doc_id="d2")])
    with pytest.raises(EmptyDocumentError) as exc:
        rates_per_1000(m, vocab)
    assert exc.value.doc_id == "d2"


def test_save_and_load(tmp_path):
    vocab, m = build_dtm([tokenize("a b a", "d1"), tokenize("b c", "d2")], max_doc_fraction=1.0)
    save_dtm(vocab, m, tmp_path / "dtm.csv")
    assert (tmp_path / "dtm.vocab.csv").is_file()
    loaded_vocab, loaded = load_dtm(tmp_path / "dtm.csv")
    assert loaded_vocab.terms == vocab.terms
    assert loaded.rows == m.rows
    np.testing.assert_array_equal(loaded.counts.toarray(), m.counts.toarray())
    np.testing.assert_array_equal(loaded.row_token_totals, m.row_token_totals)
