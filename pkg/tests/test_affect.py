import numpy as np
import pytest

from qna.affect import affect_pca, affect_scores, word_affect
from qna.errors import NoScorableWordsError
from qna.schemas import AffectLabels
from qna.text import pipeline, tokenize


@pytest.fixture
def labels():
    # one known label per dimension; the fillers are not in the mini dictionary
    return AffectLabels(pos=["happiness"] + ["zzz"] * 6, neg=["cat"] + ["zzz"] * 4, aro=["dog"] + ["zzz"] * 13)


def test_word_scores_sum_label_similarities(mini_graph, labels):
    scores = word_affect("happiness", labels, mini_graph)
    assert scores == pytest.approx({"pos": 1.0, "neg": 0.2, "aro": 0.2})
    assert word_affect("zzxq", labels, mini_graph) is None


def test_text_means_hit_rate_and_extremes(mini_graph, labels):
    result = affect_scores(tokenize("happiness dog zzxq"), labels, mini_graph)
    stats = result.stats
    assert stats.pos_valence_mean == pytest.approx((1.0 + 0.2) / 2)
    assert stats.neg_valence_mean == pytest.approx((0.2 + 1 / 3) / 2)
    assert stats.arousal_mean == pytest.approx((0.2 + 1.0) / 2)
    assert stats.hit_rate == pytest.approx(2 / 3)
    assert (stats.most_positive, stats.most_negative, stats.most_arousing) == ("happiness", "dog", "dog")
    assert list(result.word_vectors.index) == ["dog", "happiness"]


def test_means_weight_repeated_tokens(mini_graph, labels):
    stats = affect_scores(tokenize("happiness happiness dog"), labels, mini_graph).stats
    assert stats.pos_valence_mean == pytest.approx((1.0 + 1.0 + 0.2) / 3)


def test_no_scorable_words(mini_graph, labels):
    with pytest.raises(NoScorableWordsError):
        affect_scores(tokenize("zzxq qqq"), labels, mini_graph)


def test_default_labels_have_published_sizes():
    labels = AffectLabels.default()
    assert (len(labels.pos), len(labels.neg), len(labels.aro)) == (7, 5, 14)


def test_labels_reject_wrong_sizes():
    with pytest.raises(ValueError):
        AffectLabels(pos=["happiness"], neg=["shame"], aro=["anger"])


def test_affect_pca_of_word_vectors(mini_graph, labels):
    result = affect_scores(tokenize("happiness dog cat love"), labels, mini_graph)
    components = affect_pca(result.word_vectors, 3)
    assert components.coordinates.shape == (4, 3)
    assert np.sum(components.explained_variance_ratio) == pytest.approx(1.0)


def test_happiness_alone_includes_self_similarity(wordnet_graph):
    stats = affect_scores(pipeline("happiness")[1], AffectLabels.default(), wordnet_graph).stats
    assert stats.most_positive == "happiness"
    assert stats.pos_valence_mean >= 1.0
