"""
Per-text lexical profile: surface counts, WordNet POS counts, collocations,
dispersion and sonority
"""
import logging
import unicodedata
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .affect import affect_scores
from .config import data_file, iter_data_lines, settings
from .errors import EmptyDocumentError, InvalidArgumentError, NoScorableWordsError
from .schemas import AffectLabels, PosStats, SurfaceStats, TextProfile
from .text import StopwordList, TokenStream, ngram_counts, preprocess
from .wordnet import POS, SynsetGraph, pos_of_word

logger = logging.getLogger(__name__)


def _ranked(counter: Counter, k: int) -> List[Tuple]:
    """Top-k items by count, ties broken lexicographically"""
    return sorted(counter.items(), key=lambda item: (-item[1], item[0]))[:k]


def surface_profile(stream: TokenStream, corpus_type_total: int = 41857) -> SurfaceStats:
    if not len(stream):
        raise EmptyDocumentError(stream.doc_id)
    counts = Counter(stream.lowers())
    types = len(counts)
    return SurfaceStats(
        token_count=len(stream),
        type_count=types,
        hapax_count=sum(1 for c in counts.values() if c == 1),
        ttr=types / len(stream),
        type_share=types / corpus_type_total,
    )


def pos_profile(stream: TokenStream, graph: SynsetGraph, top: int = 3) -> PosStats:
    """
    Count nouns, verbs and adjectives by WordNet lookup.

    A token indexed under several categories is counted in each of them.
    """
    if not len(stream):
        raise EmptyDocumentError(stream.doc_id)
    by_pos: Dict[POS, Counter] = {POS.NOUN: Counter(), POS.VERB: Counter(), POS.ADJ: Counter()}
    tags: Dict[str, set] = {}
    for word in stream.lowers():
        if word not in tags:
            tags[word] = pos_of_word(word, graph)
        for pos, counter in by_pos.items():
            if pos in tags[word]:
                counter[word] += 1

    nouns, verbs, adjs = (sum(by_pos[p].values()) for p in (POS.NOUN, POS.VERB, POS.ADJ))
    return PosStats(
        noun_count=nouns,
        verb_count=verbs,
        adj_count=adjs,
        av_quotient=adjs / verbs if verbs else None,
        top_nouns=_ranked(by_pos[POS.NOUN], top),
        top_verbs=_ranked(by_pos[POS.VERB], top),
        top_adjs=_ranked(by_pos[POS.ADJ], top),
    )


def collocations(stream: TokenStream, n: int, k: int, attr: str = "lower") -> List[Tuple[Tuple[str, ...], int]]:
    """Most frequent n-grams of a stopword-filtered stream with their counts"""
    if k < 0:
        raise InvalidArgumentError(f"k must be >= 0, got {k}")
    if k == 0:
        return []
    return _ranked(ngram_counts([stream], n, attr), k)


def dispersion(stream: TokenStream, targets: Sequence[str]) -> Dict[str, List[float]]:
    """Relative positions i/len of every token matching each target by lower or stem"""
    total = len(stream)
    positions: Dict[str, List[float]] = {t: [] for t in targets}
    for i, token in enumerate(stream.tokens):
        for target in targets:
            if token.lower == target or token.stem == target:
                positions[target].append(i / total)
    return positions


# ============== Sonority ==============

@dataclass(frozen=True)
class SonorityTable:
    """Grapheme to sonority rank (1 = least sonorous, 10 = most)"""
    ranks: Dict[str, int]

    def __post_init__(self):
        bad = {g: r for g, r in self.ranks.items() if not 1 <= r <= 10 or len(g) != 1}
        if bad:
            raise InvalidArgumentError(f"invalid sonority entries: {bad}")

    @classmethod
    def load(cls, path: Optional[Path] = None) -> "SonorityTable":
        ranks = {}
        for line in iter_data_lines(path or data_file("sonority.tsv")):
            grapheme, rank = line.split()
            ranks[grapheme.lower()] = int(rank)
        return cls(ranks)


@lru_cache(maxsize=1)
def default_sonority_table() -> SonorityTable:
    return SonorityTable.load()


def sonority_word(word: str, table: Optional[SonorityTable] = None) -> Optional[float]:
    """
    Mean sonority rank of the word's graphemes, case-insensitive.

    Accents are stripped first; characters outside the table are ignored.
    Returns None when nothing scorable is left.
    """
    table = table or default_sonority_table()
    letters = [c for c in unicodedata.normalize("NFKD", word.lower()) if c in table.ranks]
    if not letters:
        return None
    return sum(table.ranks[c] for c in letters) / len(letters)


def sonority_text(stream: TokenStream, table: Optional[SonorityTable] = None) -> Optional[float]:
    """Unweighted mean of sonority_word over the stream's scorable tokens"""
    scores = [s for s in (sonority_word(t.surface, table) for t in stream.tokens) if s is not None]
    return sum(scores) / len(scores) if scores else None


# ============== Full profile ==============

def build_profile(
    stream: TokenStream,
    graph: Optional[SynsetGraph] = None,
    labels: Optional[AffectLabels] = None,
    stopwords: Optional[StopwordList] = None,
    corpus_type_total: Optional[int] = None,
    collocation_top: Optional[int] = None,
    top_words: Optional[int] = None,
) -> TextProfile:
    """
    Assemble every profile column for one unfiltered token stream.

    POS counts and affect need a WordNet graph and are left empty without one.
    """
    corpus_type_total = corpus_type_total or settings.corpus_type_total
    collocation_top = settings.collocation_top if collocation_top is None else collocation_top
    top_words = settings.top_words if top_words is None else top_words

    filtered = preprocess(stream, stopwords)
    profile = TextProfile(
        text_id=stream.doc_id,
        surface=surface_profile(stream, corpus_type_total),
        collocations={
            "bigrams": [(" ".join(g), c) for g, c in collocations(filtered, 2, collocation_top)],
            "trigrams": [(" ".join(g), c) for g, c in collocations(filtered, 3, collocation_top)],
        },
        sonority_mean=sonority_text(stream),
    )
    if graph is not None and len(filtered):
        profile.pos = pos_profile(filtered, graph, top_words)
        try:
            profile.affect = affect_scores(filtered, labels or AffectLabels.default(), graph).stats
        except NoScorableWordsError as e:
            logger.warning(f"⚠ {stream.doc_id}: {e}")
    logger.info(f"✓ Profile for {stream.doc_id or 'text'}: {profile.surface.token_count} tokens")
    return profile
