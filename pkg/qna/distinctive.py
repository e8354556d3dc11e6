"""
Word distinctiveness between two authors: unique words, rate-difference
keyness and Bayesian comparison of segment rates
"""
import hashlib
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from .errors import InsufficientTextError, InvalidArgumentError
from .ml.gibbs import gibbs_two_group
from .schemas import CompoundText, GibbsConfig, KeynessResult, PosteriorSamples
from .text import StopwordList, Token, pipeline

logger = logging.getLogger(__name__)

Segments = List[List[Token]]


def _check_pair(rates: pd.DataFrame, a: str, b: str) -> None:
    if a == b:
        raise InvalidArgumentError(f"compare two different documents, got '{a}' twice")
    for doc in (a, b):
        if doc not in rates.index:
            raise InvalidArgumentError(f"Unknown document: {doc}")


def corpus_average_rates(rates: pd.DataFrame) -> pd.Series:
    """Per-term mean rate over every document of the matrix"""
    return rates.mean(axis=0)


def _keyness(rate_a: float, rate_b: float, avg: float) -> Optional[float]:
    return (rate_a - rate_b) / avg if avg > 0 else None


def unique_words(
    rates: pd.DataFrame,
    a: str,
    b: str,
    all_docs_avg: Optional[pd.Series] = None,
) -> List[KeynessResult]:
    """Terms used by exactly one of a and b, ranked by the non-zero rate"""
    _check_pair(rates, a, b)
    avg = corpus_average_rates(rates) if all_docs_avg is None else all_docs_avg
    ra, rb = rates.loc[a], rates.loc[b]
    results = []
    for term in rates.columns[((ra > 0) ^ (rb > 0)).to_numpy()]:
        rate_a, rate_b, mean = float(ra[term]), float(rb[term]), float(avg.get(term, 0.0))
        results.append(KeynessResult(
            word=term,
            rate_a=rate_a,
            rate_b=rate_b,
            corpus_avg_rate=mean,
            unique_to=a if rate_a > 0 else b,
            keyness=_keyness(rate_a, rate_b, mean),
        ))
    return sorted(results, key=lambda r: (-max(r.rate_a, r.rate_b), r.word))


def keyness_scores(
    rates: pd.DataFrame,
    a: str,
    b: str,
    all_docs_avg: Optional[pd.Series] = None,
) -> List[KeynessResult]:
    """
    (rate_a - rate_b) / corpus average rate for every term used by a or b.

    Ranked by absolute keyness, ties lexicographic.
    """
    _check_pair(rates, a, b)
    avg = corpus_average_rates(rates) if all_docs_avg is None else all_docs_avg
    missing = rates.columns.difference(avg.index)
    if len(missing):
        raise InvalidArgumentError(f"corpus averages lack {len(missing)} terms, e.g. '{missing[0]}'")
    ra, rb = rates.loc[a], rates.loc[b]
    results = []
    for term in rates.columns:
        rate_a, rate_b, mean = float(ra[term]), float(rb[term]), float(avg[term])
        if rate_a == 0 and rate_b == 0:
            continue
        if mean <= 0:
            raise InvalidArgumentError(f"term '{term}' is used by {a} or {b} but its corpus average is 0")
        unique_to = None
        if (rate_a > 0) != (rate_b > 0):
            unique_to = a if rate_a > 0 else b
        results.append(KeynessResult(
            word=term,
            rate_a=rate_a,
            rate_b=rate_b,
            corpus_avg_rate=mean,
            unique_to=unique_to,
            keyness=_keyness(rate_a, rate_b, mean),
        ))
    return sorted(results, key=lambda r: (-abs(r.keyness), r.word))


# ============== Bayesian comparison ==============

def derive_seed(master_seed: int, word: str) -> int:
    """Stable per-word seed, independent of run order and process"""
    digest = hashlib.sha256(f"{master_seed}:{word}".encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big")


def segment_text(
    text: CompoundText,
    segment_len: int,
    stopwords: Optional[StopwordList] = None,
) -> Segments:
    """
    Consecutive segments of segment_len filtered tokens; the partial tail is dropped.
    """
    if segment_len < 1:
        raise InvalidArgumentError(f"segment_len must be >= 1, got {segment_len}")
    _, filtered = pipeline(text.body, text.author, stopwords)
    n_full = len(filtered) // segment_len
    if n_full == 0:
        raise InsufficientTextError(
            f"'{text.author}' has {len(filtered)} tokens, fewer than one segment of {segment_len}"
        )
    tokens = list(filtered.tokens)
    return [tokens[i * segment_len:(i + 1) * segment_len] for i in range(n_full)]


def segment_rates(segments: Segments, word: str) -> np.ndarray:
    """Per-1000 rate of word in each segment, matching stem or lowercase form"""
    return np.array([
        1000.0 * sum(1 for t in seg if t.stem == word or t.lower == word) / len(seg)
        for seg in segments
    ])


def _compare(word: str, segments: Tuple[Segments, Segments], cfg: GibbsConfig) -> Tuple[KeynessResult, PosteriorSamples]:
    x = segment_rates(segments[0], word)
    y = segment_rates(segments[1], word)
    run_cfg = cfg.model_copy(update={"seed": derive_seed(cfg.seed, word)})
    posterior = gibbs_two_group(x, y, run_cfg)
    result = KeynessResult(word=word, rate_a=float(x.mean()), rate_b=float(y.mean()), p_delta_neg=posterior.p_delta_neg)
    return result, posterior


def _segment_pair(
    texts: Tuple[CompoundText, CompoundText],
    segment_len: int,
    stopwords: Optional[StopwordList],
) -> Tuple[Segments, Segments]:
    return segment_text(texts[0], segment_len, stopwords), segment_text(texts[1], segment_len, stopwords)


def bayes_keyness(
    word: str,
    texts: Tuple[CompoundText, CompoundText],
    segment_len: int = 1000,
    cfg: Optional[GibbsConfig] = None,
    stopwords: Optional[StopwordList] = None,
) -> KeynessResult:
    """
    p(delta < 0) for word, with the segment rates of texts[0] as group 1.

    rate_a and rate_b are the mean segment rates.
    """
    result, _ = _compare(word, _segment_pair(texts, segment_len, stopwords), cfg or GibbsConfig())
    return result


def bayes_comparison(
    words: Sequence[str],
    texts: Tuple[CompoundText, CompoundText],
    segment_len: int = 1000,
    cfg: Optional[GibbsConfig] = None,
    stopwords: Optional[StopwordList] = None,
    n_jobs: int = 1,
) -> Dict[str, Tuple[KeynessResult, PosteriorSamples]]:
    """Result and posterior draws per word; texts are segmented once for all words"""
    cfg = cfg or GibbsConfig()
    segments = _segment_pair(texts, segment_len, stopwords)
    unique = sorted(set(words))
    runs = Parallel(n_jobs=n_jobs)(delayed(_compare)(w, segments, cfg) for w in unique)
    logger.info(f"✓ Bayesian comparison of {len(unique)} words ({len(segments[0])} vs {len(segments[1])} segments)")
    return dict(zip(unique, runs))


def bayes_ranking(
    words: Sequence[str],
    texts: Tuple[CompoundText, CompoundText],
    segment_len: int = 1000,
    cfg: Optional[GibbsConfig] = None,
    stopwords: Optional[StopwordList] = None,
    n_jobs: int = 1,
) -> List[KeynessResult]:
    """
    Bayesian comparison for many words, ordered by p(delta < 0) ascending.

    The first entries are most characteristic of texts[0], the last of texts[1].
    """
    return rank_comparison(bayes_comparison(words, texts, segment_len, cfg, stopwords, n_jobs))


def rank_comparison(runs: Dict[str, Tuple[KeynessResult, PosteriorSamples]]) -> List[KeynessResult]:
    """Results of bayes_comparison ordered by p(delta < 0), ties by word"""
    return sorted((result for result, _ in runs.values()), key=lambda r: (r.p_delta_neg, r.word))
