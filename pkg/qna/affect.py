"""
WordNet-based affect scores: positive valence, negative valence and arousal.

A word's score on a dimension is the sum of its path similarities to the
dimension's label words; text scores average over the words WordNet knows.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional

import pandas as pd

from .errors import NoScorableWordsError
from .ml.numerics import PCAResult, pca
from .schemas import AffectLabels, AffectStats
from .text import TokenStream
from .wordnet import SynsetGraph, word_path_similarity

logger = logging.getLogger(__name__)

DIMENSIONS = ("pos", "neg", "aro")


@dataclass
class AffectResult:
    stats: AffectStats
    word_vectors: pd.DataFrame  # one row per scored word type, columns pos/neg/aro


def word_affect(word: str, labels: AffectLabels, graph: SynsetGraph) -> Optional[Dict[str, float]]:
    """Label-sum similarities of one word; None when WordNet does not know it"""
    if not graph.synsets_of(word):
        return None
    scores = {}
    for dim in DIMENSIONS:
        scores[dim] = sum(float(word_path_similarity(word, label, graph)) for label in getattr(labels, dim))
    return scores


def _extreme(vectors: pd.DataFrame, dim: str) -> str:
    best = vectors[dim].max()
    return min(vectors.index[vectors[dim] == best])


def affect_scores(stream: TokenStream, labels: AffectLabels, graph: SynsetGraph) -> AffectResult:
    """
    Affect means, hit rate and most extreme words of a stopword-filtered stream.

    Means and hit rate count token occurrences; ties among extremes go to the
    lexicographically first word.
    """
    words = stream.lowers()
    vectors: Dict[str, Dict[str, float]] = {}
    misses = set()
    for word in set(words):
        scores = word_affect(word, labels, graph)
        if scores is None:
            misses.add(word)
        else:
            vectors[word] = scores

    hits = [w for w in words if w in vectors]
    if not hits:
        raise NoScorableWordsError(f"no scorable words in '{stream.doc_id or 'text'}'")

    table = pd.DataFrame.from_dict(vectors, orient="index", columns=list(DIMENSIONS)).sort_index()
    occurrences = table.loc[hits]
    stats = AffectStats(
        pos_valence_mean=float(occurrences["pos"].mean()),
        neg_valence_mean=float(occurrences["neg"].mean()),
        arousal_mean=float(occurrences["aro"].mean()),
        hit_rate=len(hits) / len(words),
        most_positive=_extreme(table, "pos"),
        most_negative=_extreme(table, "neg"),
        most_arousing=_extreme(table, "aro"),
    )
    logger.info(f"✓ Affect: {len(vectors)} word types scored, {len(misses)} not in WordNet, hit rate {stats.hit_rate:.2f}")
    return AffectResult(stats=stats, word_vectors=table)


def affect_pca(word_vectors: pd.DataFrame, k: int = 3) -> PCAResult:
    """Principal components of the per-word (pos, neg, aro) vectors"""
    return pca(word_vectors[list(DIMENSIONS)].to_numpy(dtype=float), k)
