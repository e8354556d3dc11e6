"""
Add-k smoothed trigram language model and per-token surprisal
"""
import logging
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import InvalidArgumentError, MissingInputError
from ..text import TokenStream

logger = logging.getLogger(__name__)

PAD = "<s>"
UNK = "<unk>"


class TrigramModel:
    """
    Trigram counts over padded sentences.

    P(w | h) = (c(h, w) + k) / (c(h) + k * (V + 1)), where c(h) sums the
    trigram counts with history h and the extra outcome is the unknown word.
    """

    def __init__(self, counts: Dict[int, Counter], k: float = 0.5):
        if k <= 0:
            raise InvalidArgumentError(f"smoothing k must be > 0, got {k}")
        self.counts = counts
        self.k = k
        self.vocab = frozenset(w for (w,) in counts[1] if w != UNK)
        self.history_totals: Counter = Counter()
        for (h1, h2, _), c in counts[3].items():
            self.history_totals[(h1, h2)] += c

    @property
    def vocab_size(self) -> int:
        return len(self.vocab)

    def normalize(self, word: str) -> str:
        return word if word in self.vocab or word == PAD else UNK

    def probability(self, word: str, history: Tuple[str, str]) -> float:
        h = (self.normalize(history[0]), self.normalize(history[1]))
        w = self.normalize(word)
        return (self.counts[3][(*h, w)] + self.k) / (self.history_totals[h] + self.k * (self.vocab_size + 1))

    def outcomes(self) -> List[str]:
        """Every word the model can predict: the vocabulary plus the unknown word"""
        return sorted(self.vocab) + [UNK]


def _padded(sentence: Sequence[str]) -> List[str]:
    return [PAD, PAD, *sentence]


def _sentences(streams: Iterable[TokenStream]) -> List[List[str]]:
    return [s for stream in streams for s in stream.sentences("lower") if s]


def train_trigram(streams: Sequence[TokenStream], k: float = 0.5, unk_singletons: bool = False) -> TrigramModel:
    """
    Count 1-, 2- and 3-grams over lowercased sentences with two leading pads.

    With unk_singletons, types seen once in training become the unknown word.
    """
    if k <= 0:
        raise InvalidArgumentError(f"smoothing k must be > 0, got {k}")
    sentences = _sentences(streams)
    if not sentences:
        raise InvalidArgumentError("training corpus is empty")

    if unk_singletons:
        freq = Counter(w for s in sentences for w in s)
        sentences = [[w if freq[w] > 1 else UNK for w in s] for s in sentences]

    counts: Dict[int, Counter] = {1: Counter(), 2: Counter(), 3: Counter()}
    for sentence in sentences:
        padded = _padded(sentence)
        counts[1].update((w,) for w in sentence)
        counts[2].update(zip(padded, padded[1:]))
        counts[3].update(zip(padded, padded[1:], padded[2:]))

    model = TrigramModel(counts, k)
    logger.info(f"✓ Trigram model: {len(sentences)} sentences, V={model.vocab_size}, k={k}")
    return model


@dataclass
class SurprisalResult:
    tokens: List[str]
    values: np.ndarray

    @property
    def mean(self) -> Optional[float]:
        return float(self.values.mean()) if len(self.values) else None

    @property
    def perplexity(self) -> Optional[float]:
        return None if self.mean is None else float(2 ** self.mean)


def surprisal(model: TrigramModel, stream: TokenStream) -> SurprisalResult:
    """-log2 P of every token given the two preceding tokens of its sentence"""
    tokens, values = [], []
    for sentence in _sentences([stream]):
        padded = _padded(sentence)
        for i, word in enumerate(sentence):
            p = model.probability(word, (padded[i], padded[i + 1]))
            tokens.append(word)
            values.append(-math.log2(p))
    return SurprisalResult(tokens=tokens, values=np.asarray(values, dtype=float))


# ============== Persistence ==============

def save_counts(model: TrigramModel, path: Union[str, Path]) -> None:
    """Write sorted "count<TAB>w1 w2 w3" lines, unigrams first"""
    lines = []
    for order in (1, 2, 3):
        for ngram in sorted(model.counts[order]):
            lines.append(f"{model.counts[order][ngram]}\t{' '.join(ngram)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_counts(path: Union[str, Path], k: float = 0.5) -> TrigramModel:
    path = Path(path)
    if not path.is_file():
        raise MissingInputError(f"Count file not found: {path}")
    counts: Dict[int, Counter] = {1: Counter(), 2: Counter(), 3: Counter()}
    with open(path, encoding="utf-8") as fp:
        for number, line in enumerate(fp, start=1):
            if not line.strip():
                continue
            try:
                count, words = line.rstrip("\n").split("\t")
                ngram = tuple(words.split(" "))
                counts[len(ngram)][ngram] = int(count)
            except (ValueError, KeyError) as e:
                raise InvalidArgumentError(f"{path}, line {number}: malformed n-gram count") from e
    return TrigramModel(counts, k)
