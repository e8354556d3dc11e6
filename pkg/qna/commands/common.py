"""
Loaders shared by the subcommands: corpus, loose texts, streams, matrix, WordNet
"""
import argparse
import logging
from contextlib import contextmanager
from contextvars import ContextVar
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from ..cleaning import clean_corpus
from ..config import RunConfig
from ..dtm import DocumentTermMatrix, Vocabulary, build_dtm
from ..errors import InvalidArgumentError, MissingInputError
from ..ingest import concat_by_author, decode_bytes, ingest_directory
from ..schemas import AffectLabels, CleaningReport, CleaningRules, CompoundText, IngestReport, RawText
from ..text import TokenStream, pipeline, tokenize
from ..wordnet import SynsetGraph, load_wordnet

logger = logging.getLogger(__name__)

# every subcommand: (settings, parsed flags, output directory) -> files written
Command = Callable[[RunConfig, argparse.Namespace, Path], List[Path]]

_shared: ContextVar[Optional[Dict[Tuple, Any]]] = ContextVar("shared_corpus", default=None)


@contextmanager
def shared_corpus() -> Iterator[Dict[Tuple, Any]]:
    """
    Scope in which the cleaned corpus and its document-term matrices are
    built once and reused by every command run inside it.
    """
    token = _shared.set({})
    try:
        yield _shared.get()
    finally:
        _shared.reset(token)


def _reuse(key: Tuple, build: Callable[[], Any]) -> Any:
    cache = _shared.get()
    if cache is None:
        return build()
    if key not in cache:
        cache[key] = build()
    else:
        logger.debug(f"Reusing {key[0]} of {key[1]}")
    return cache[key]


def load_rules(cfg: RunConfig) -> CleaningRules:
    if cfg.cleaning_rules is None:
        return CleaningRules.default()
    cfg.require_paths("cleaning_rules")
    return CleaningRules.from_file(cfg.cleaning_rules)


def load_labels(cfg: RunConfig) -> AffectLabels:
    if cfg.affect_labels is None:
        return AffectLabels.default()
    cfg.require_paths("affect_labels")
    return AffectLabels.from_file(cfg.affect_labels)


def load_cleaned(cfg: RunConfig) -> Tuple[IngestReport, List[Tuple[RawText, CleaningReport]]]:
    cfg.require_paths("corpus_dir")
    if not cfg.manifest_path.is_file():
        raise MissingInputError(f"Manifest not found: {cfg.manifest_path}")
    rules = load_rules(cfg)

    def build():
        report = ingest_directory(cfg.corpus_dir, cfg.manifest_path)
        if not report.texts:
            raise InvalidArgumentError(f"No text could be loaded from {cfg.manifest_path}")
        return report, clean_corpus(report.texts, rules, n_jobs=cfg.n_jobs)

    return _reuse(("corpus", cfg.manifest_path.resolve(), cfg.cleaning_rules), build)


def load_compounds(cfg: RunConfig, authors: Optional[Sequence[str]] = None) -> List[CompoundText]:
    """Cleaned per-author compound texts, optionally restricted to authors (in that order)"""
    _, cleaned = load_cleaned(cfg)
    compounds = concat_by_author([text for text, _ in cleaned])
    if not authors:
        return compounds
    by_author = {c.author: c for c in compounds}
    unknown = [a for a in authors if a not in by_author]
    if unknown:
        raise InvalidArgumentError(f"Unknown author: {unknown[0]}")
    return [by_author[a] for a in authors]


def load_text_files(paths: Sequence[Path]) -> List[Tuple[str, str]]:
    """(doc id, body) of loose text files; the id is the file name without suffix"""
    texts = []
    for path in paths:
        path = Path(path)
        if not path.is_file():
            raise MissingInputError(f"File not found: {path}")
        texts.append((path.stem, decode_bytes(path.read_bytes(), str(path))))
    return texts


def load_documents(cfg: RunConfig, files: Optional[Sequence[Path]], authors: Optional[Sequence[str]] = None) -> List[Tuple[str, str]]:
    """Loose files when given, otherwise the corpus compound texts"""
    if files:
        return load_text_files(files)
    return [(c.author, c.body) for c in load_compounds(cfg, authors)]


def raw_streams(documents: Sequence[Tuple[str, str]]) -> List[TokenStream]:
    return [tokenize(body, doc_id) for doc_id, body in documents]


def build_matrix(cfg: RunConfig, compounds: Sequence[CompoundText]) -> Tuple[Vocabulary, DocumentTermMatrix]:
    """DTM over stemmed, stopword-filtered compound texts"""
    def build():
        raws, filtered = [], []
        for compound in compounds:
            raw, kept = pipeline(compound.body, compound.author)
            raws.append(raw)
            filtered.append(kept)
        totals = [len(s) for s in raws] if cfg.rate_denominator == "pre_stopword" else None
        return build_dtm(filtered, cfg.min_count, cfg.max_doc_fraction, token_totals=totals)

    key = (
        "matrix", cfg.manifest_path.resolve(), tuple(c.author for c in compounds),
        cfg.min_count, cfg.max_doc_fraction, cfg.rate_denominator,
    )
    return _reuse(key, build)


def load_graph(cfg: RunConfig) -> SynsetGraph:
    cfg.require_paths("wordnet_dir")
    return _reuse(
        ("wordnet", Path(cfg.wordnet_dir).resolve(), cfg.simulate_root),
        lambda: load_wordnet(cfg.wordnet_dir, simulate_root=cfg.simulate_root, cache=cfg.wordnet_cache),
    )


def optional_graph(cfg: RunConfig) -> Optional[SynsetGraph]:
    if cfg.wordnet_dir is None:
        logger.warning("⚠ No WordNet directory configured, POS and affect columns are skipped")
        return None
    return load_graph(cfg)


def require_pair(authors: Optional[Sequence[str]]) -> Tuple[str, str]:
    if not authors or len(authors) != 2:
        raise InvalidArgumentError("--authors needs exactly two author names")
    return authors[0], authors[1]
