"""
Vocabulary and sparse document-term matrix over stemmed token streams
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy import sparse
from sklearn.feature_extraction.text import CountVectorizer

from .errors import EmptyDocumentError, InvalidArgumentError, MissingInputError
from .text import TokenStream

logger = logging.getLogger(__name__)

DEFAULT_MIN_COUNT = 1
DEFAULT_MAX_DOC_FRACTION = 0.95


@dataclass
class Vocabulary:
    """Columns of a DocumentTermMatrix, sorted lexicographically"""
    terms: List[str] = field(default_factory=list)
    doc_freq: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        self.index: Dict[str, int] = {t: i for i, t in enumerate(self.terms)}

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index


@dataclass
class DocumentTermMatrix:
    """Per-document term counts; row_token_totals are the rate denominators"""
    rows: List[str]
    counts: sparse.csr_matrix
    row_token_totals: np.ndarray

    @property
    def shape(self) -> Tuple[int, int]:
        return self.counts.shape

    def row(self, doc_id: str) -> int:
        try:
            return self.rows.index(doc_id)
        except ValueError:
            raise InvalidArgumentError(f"Unknown document: {doc_id}") from None

    def to_frame(self, vocab: Vocabulary) -> pd.DataFrame:
        return pd.DataFrame(self.counts.toarray(), index=self.rows, columns=vocab.terms)


def _identity(doc):
    return doc


def build_dtm(
    streams: Sequence[TokenStream],
    min_count: int = DEFAULT_MIN_COUNT,
    max_doc_fraction: float = DEFAULT_MAX_DOC_FRACTION,
    token_totals: Optional[Sequence[int]] = None,
) -> Tuple[Vocabulary, DocumentTermMatrix]:
    """
    Count stems per document and prune the vocabulary.

    A term is kept when its corpus count is at least min_count and the fraction
    of documents containing it is at most max_doc_fraction. token_totals
    overrides the default denominators (the stream lengths), e.g. with
    pre-stopword lengths.
    """
    if not streams:
        raise InvalidArgumentError("build_dtm needs at least one document")
    if not 0 < max_doc_fraction <= 1:
        raise InvalidArgumentError(f"max_doc_fraction must be in (0, 1], got {max_doc_fraction}")
    if min_count < 1:
        raise InvalidArgumentError(f"min_count must be >= 1, got {min_count}")
    if token_totals is not None and len(token_totals) != len(streams):
        raise InvalidArgumentError("token_totals must have one entry per document")

    rows = [s.doc_id or f"doc{i}" for i, s in enumerate(streams)]
    totals = np.asarray(token_totals if token_totals is not None else [len(s) for s in streams], dtype=np.int64)

    vectorizer = CountVectorizer(analyzer=_identity, lowercase=False, dtype=np.int64)
    try:
        counts = vectorizer.fit_transform([s.stems() for s in streams]).tocsr()
        terms = vectorizer.get_feature_names_out().tolist()
    except ValueError:
        # every document is empty
        logger.warning("⚠ No terms in any document, vocabulary is empty")
        counts = sparse.csr_matrix((len(streams), 0), dtype=np.int64)
        terms = []

    n_docs = len(streams)
    corpus_counts = np.asarray(counts.sum(axis=0)).ravel()
    doc_counts = np.asarray((counts > 0).sum(axis=0)).ravel()
    keep = (corpus_counts >= min_count) & (doc_counts <= max_doc_fraction * n_docs)
    if len(terms) and not keep.all():
        logger.info(f"Pruned {int((~keep).sum())} of {len(terms)} terms")
    columns = np.flatnonzero(keep)

    vocab = Vocabulary(
        terms=[terms[i] for i in columns],
        doc_freq={terms[i]: doc_counts[i] / n_docs for i in columns},
    )
    matrix = DocumentTermMatrix(rows=rows, counts=counts[:, columns].tocsr(), row_token_totals=totals)
    if not len(vocab):
        logger.warning("⚠ Vocabulary is empty after pruning")
    logger.info(f"✓ DTM: {n_docs} documents x {len(vocab)} terms")
    return vocab, matrix


def rates_per_1000(m: DocumentTermMatrix, vocab: Optional[Vocabulary] = None) -> pd.DataFrame:
    """Usage rates per 1000 tokens; rows are document ids, columns terms"""
    empty = np.flatnonzero(m.row_token_totals <= 0)
    if len(empty):
        raise EmptyDocumentError(m.rows[empty[0]], f"Document '{m.rows[empty[0]]}' has no tokens, rates are undefined")
    dense = m.counts.toarray().astype(float)
    rates = 1000.0 * dense / m.row_token_totals[:, None]
    columns = vocab.terms if vocab is not None else None
    return pd.DataFrame(rates, index=m.rows, columns=columns)


# ============== Persistence ==============

def _sidecars(path: Path) -> Tuple[Path, Path]:
    return path.with_suffix(".vocab.csv"), path.with_suffix(".rows.csv")


def save_dtm(vocab: Vocabulary, m: DocumentTermMatrix, path: Union[str, Path]) -> None:
    """
    Write the sparse triplet CSV (doc_id, term, count) with two sidecars:
    <name>.vocab.csv (term, doc_count) and <name>.rows.csv (doc_id, token_total).
    """
    path = Path(path)
    coo = m.counts.tocoo()
    order = np.lexsort((coo.col, coo.row))
    triplets = pd.DataFrame({
        "doc_id": [m.rows[i] for i in coo.row[order]],
        "term": [vocab.terms[j] for j in coo.col[order]],
        "count": coo.data[order],
    })
    triplets.to_csv(path, index=False)

    vocab_path, rows_path = _sidecars(path)
    n_docs = len(m.rows)
    pd.DataFrame({
        "term": vocab.terms,
        "doc_count": [int(round(vocab.doc_freq[t] * n_docs)) for t in vocab.terms],
    }).to_csv(vocab_path, index=False)
    pd.DataFrame({"doc_id": m.rows, "token_total": m.row_token_totals}).to_csv(rows_path, index=False)


def load_dtm(path: Union[str, Path]) -> Tuple[Vocabulary, DocumentTermMatrix]:
    path = Path(path)
    vocab_path, rows_path = _sidecars(path)
    for p in (path, vocab_path, rows_path):
        if not p.is_file():
            raise MissingInputError(f"DTM file not found: {p}")

    vocab_df = pd.read_csv(vocab_path, dtype={"term": str}, keep_default_na=False)
    rows_df = pd.read_csv(rows_path, dtype={"doc_id": str}, keep_default_na=False)
    triplets = pd.read_csv(path, dtype={"doc_id": str, "term": str}, keep_default_na=False)

    n_docs = len(rows_df)
    terms = vocab_df["term"].tolist()
    vocab = Vocabulary(terms=terms, doc_freq=dict(zip(terms, vocab_df["doc_count"] / n_docs)))
    rows = rows_df["doc_id"].tolist()
    row_index = {d: i for i, d in enumerate(rows)}
    counts = sparse.csr_matrix(
        (
            triplets["count"].to_numpy(dtype=np.int64),
            (triplets["doc_id"].map(row_index).to_numpy(), triplets["term"].map(vocab.index).to_numpy()),
        ),
        shape=(n_docs, len(terms)),
        dtype=np.int64,
    )
    return vocab, DocumentTermMatrix(rows=rows, counts=counts, row_token_totals=rows_df["token_total"].to_numpy(dtype=np.int64))
