import pytest

from qna.errors import EmptyDocumentError, InvalidArgumentError
from qna.profile import (
    SonorityTable, build_profile, collocations, dispersion, pos_profile, sonority_text, sonority_word,
    surface_profile,
)
from qna.text import TokenStream, tokenize


def test_single_word_surface():
    stats = surface_profile(tokenize("love"))
    assert (stats.token_count, stats.type_count, stats.hapax_count, stats.ttr) == (1, 1, 1, 1.0)
    assert stats.type_share == pytest.approx(1 / 41857)


def test_surface_counts_are_case_insensitive():
    stats = surface_profile(tokenize("Love love sweet"))
    assert (stats.token_count, stats.type_count, stats.hapax_count) == (3, 2, 1)


def test_empty_stream_is_rejected():
    with pytest.raises(EmptyDocumentError):
        surface_profile(TokenStream())


def test_pos_counts_and_quotient(mini_graph):
    stats = pos_profile(tokenize("dog love sweet love"), mini_graph)
    assert (stats.noun_count, stats.verb_count, stats.adj_count) == (3, 2, 1)
    assert stats.av_quotient == pytest.approx(0.5)
    assert stats.top_nouns == [("love", 2), ("dog", 1)]
    assert stats.top_adjs == [("sweet", 1)]


def test_no_verbs_leaves_quotient_undefined(mini_graph):
    stats = pos_profile(tokenize("the the"), mini_graph)
    assert (stats.noun_count, stats.verb_count, stats.adj_count) == (0, 0, 0)
    assert stats.av_quotient is None


def test_collocations_rank_by_count_then_word():
    assert collocations(tokenize("a b a b"), 2, 1) == [(("a", "b"), 2)]
    assert collocations(tokenize("b c x a c"), 2, 2) == [(("a", "c"), 1), (("b", "c"), 1)]
    assert collocations(tokenize("a b"), 2, 0) == []
    with pytest.raises(InvalidArgumentError):
        collocations(tokenize("a b"), 2, -1)


def test_dispersion_positions():
    stream = tokenize("love a b c d e f g h love")
    assert dispersion(stream, ["love", "absent"]) == {"love": [0.0, 0.9], "absent": []}


def test_dispersion_matches_stems():
    stream = tokenize("loved hearts")
    stream = TokenStream(tuple(t._replace(stem="love") if t.lower == "loved" else t for t in stream), "x")
    assert dispersion(stream, ["love"]) == {"love": [0.0]}


@pytest.mark.parametrize("word, expected", [
    ("SKUNK", 3.6),
    ("skunk", 3.6),
    ("a", 10.0),
    ("MEMORY", 43 / 6),
])
def test_sonority_word(word, expected):
    assert sonority_word(word) == pytest.approx(expected, abs=1e-9)


def test_sonority_ignores_unknown_characters():
    assert sonority_word("don't") == sonority_word("dont")
    assert sonority_word("café") == sonority_word("cafe")
    assert sonority_word("'") is None


def test_sonority_table_validates_ranks():
    with pytest.raises(InvalidArgumentError):
        SonorityTable({"a": 11})


def test_sonority_text_is_unweighted_mean():
    assert sonority_text(tokenize("a SKUNK")) == pytest.approx((10.0 + 3.6) / 2)


def test_build_profile_without_wordnet():
    profile = build_profile(tokenize("O true love, true love, my true love is sweet", "poem"))
    assert profile.text_id == "poem"
    assert profile.surface.token_count == 10
    assert profile.collocations["bigrams"][0] == ("true love", 3)
    assert profile.pos is None and profile.affect is None
    assert profile.sonority_mean is not None


def test_build_profile_with_wordnet(mini_graph):
    profile = build_profile(tokenize("the dog and the love", "p"), mini_graph)
    assert profile.pos.noun_count == 2
    assert profile.affect is not None


def test_build_profile_tolerates_unscorable_text(mini_graph):
    profile = build_profile(tokenize("zzxq qqq", "p"), mini_graph)
    assert profile.affect is None
