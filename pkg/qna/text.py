"""
Tokenization, stopword filtering, stemming and n-gram windows.

Every analysis starts from a TokenStream produced here.
"""
import bisect
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

from nltk.stem.snowball import SnowballStemmer

from .config import data_file, iter_data_lines
from .errors import InvalidArgumentError

logger = logging.getLogger(__name__)

# Letters, optionally joined by internal apostrophes or hyphens
WORD_RE = re.compile(r"[^\W\d_]+(?:['’\-][^\W\d_]+)*")
# Candidate sentence ends: terminal punctuation, closing quotes/brackets, whitespace
BOUNDARY_RE = re.compile(r"([.!?]+)[\"'’”)\]]*\s+")
OPENERS = "\"'‘“(["

_stemmer = SnowballStemmer("english")


class Token(NamedTuple):
    surface: str
    lower: str
    stem: str
    char_offset: int
    sentence_index: int


@dataclass(frozen=True)
class TokenStream:
    """Ordered tokens of one document"""
    tokens: Tuple[Token, ...] = ()
    doc_id: str = ""

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    def lowers(self) -> List[str]:
        return [t.lower for t in self.tokens]

    def stems(self) -> List[str]:
        return [t.stem for t in self.tokens]

    def sentences(self, attr: str = "lower") -> List[List[str]]:
        """Token values grouped by sentence_index"""
        grouped: List[List[str]] = []
        current = None
        for token in self.tokens:
            if token.sentence_index != current:
                grouped.append([])
                current = token.sentence_index
            grouped[-1].append(getattr(token, attr))
        return grouped


@dataclass(frozen=True)
class StopwordList:
    """Lowercase stopwords, one entry per line in the bundled data file"""
    entries: FrozenSet[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if any(not w or w != w.lower() for w in self.entries):
            raise InvalidArgumentError("stopwords must be non-empty lowercase strings")

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def load(cls, path: Optional[Path] = None) -> "StopwordList":
        return cls(frozenset(iter_data_lines(path or data_file("stopwords.txt"))))


@lru_cache(maxsize=1)
def default_stopwords() -> StopwordList:
    return StopwordList.load()


@lru_cache(maxsize=1)
def abbreviations() -> FrozenSet[str]:
    return frozenset(iter_data_lines(data_file("abbreviations.txt")))


def _normalize(surface: str) -> str:
    return surface.lower().replace("’", "'")


def sentence_boundaries(text: str) -> List[int]:
    """
    Character offsets at which a new sentence starts.

    A boundary needs terminal punctuation, whitespace and an upper-case letter
    (after optional opening quotes); a single period after a guarded
    abbreviation (Mr., St., ...) never ends a sentence.
    """
    guards = abbreviations()
    starts = []
    for m in BOUNDARY_RE.finditer(text):
        nxt = m.end()
        while nxt < len(text) and text[nxt] in OPENERS:
            nxt += 1
        if nxt >= len(text) or not text[nxt].isupper():
            continue
        if m.group(1) == ".":
            prev = re.search(r"([^\W\d_]+)$", text[:m.start()])
            if prev and prev.group(1).lower() in guards:
                continue
        starts.append(m.end())
    return starts


def tokenize(text: str, doc_id: str = "") -> TokenStream:
    """
    Split text into word tokens with sentence indices.

    Punctuation is dropped, hyphenated compounds stay whole, and apostrophes
    survive only between letters. The stem field equals the lower field until
    preprocess() stems it.
    """
    starts = sentence_boundaries(text)
    tokens = []
    for m in WORD_RE.finditer(text):
        lower = _normalize(m.group())
        sentence = bisect.bisect_right(starts, m.start())
        tokens.append(Token(m.group(), lower, lower, m.start(), sentence))
    return TokenStream(tuple(tokens), doc_id)


@lru_cache(maxsize=65536)
def stem_word(word: str) -> str:
    """English Snowball (Porter2) stem of a lowercase word"""
    return _stemmer.stem(word)


def preprocess(
    stream: TokenStream,
    stopwords: Optional[StopwordList] = None,
    do_stem: bool = True,
) -> TokenStream:
    """Drop stopwords and (optionally) fill the stem field; order and offsets are kept"""
    stopwords = default_stopwords() if stopwords is None else stopwords
    kept = []
    for token in stream.tokens:
        if token.lower in stopwords:
            continue
        stem = stem_word(token.lower) if do_stem else token.lower
        kept.append(token._replace(stem=stem))
    return TokenStream(tuple(kept), stream.doc_id)


def ngrams(stream: TokenStream, n: int, attr: str = "lower") -> List[Tuple[str, ...]]:
    """All contiguous n-token windows of one document"""
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    values = [getattr(t, attr) for t in stream.tokens]
    return [tuple(values[i:i + n]) for i in range(len(values) - n + 1)]


def pipeline(text: str, doc_id: str = "", stopwords: Optional[StopwordList] = None,
             do_stem: bool = True) -> Tuple[TokenStream, TokenStream]:
    """Tokenize and preprocess in one go; returns (raw stream, filtered stream)"""
    raw = tokenize(text, doc_id)
    return raw, preprocess(raw, stopwords, do_stem)


def ngram_counts(streams: Iterable[TokenStream], n: int, attr: str = "lower") -> Counter:
    """n-gram frequencies pooled over streams; windows never cross documents"""
    counts: Counter = Counter()
    for stream in streams:
        counts.update(ngrams(stream, n, attr))
    return counts
