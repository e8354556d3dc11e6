"""
Per-text commands: lexical profile, affect, sonority and surprisal.

Each works on loose --text files when given, otherwise on the corpus
compound texts (optionally limited with --authors).
"""
import argparse
import logging
from pathlib import Path
from typing import List

import pandas as pd

from ..affect import affect_pca, affect_scores
from ..config import RunConfig
from ..errors import InvalidArgumentError, NoScorableWordsError
from ..ml.language_model import save_counts, surprisal as score_surprisal, train_trigram
from ..profile import build_profile, dispersion, sonority_text, sonority_word
from ..report.export import export_tables, matrix_frame, write_json, write_svg
from ..report.figures import render_figure
from ..text import pipeline
from .common import load_documents, load_graph, load_labels, optional_graph, raw_streams

logger = logging.getLogger(__name__)


def profile(cfg: RunConfig, args: argparse.Namespace, out: Path) -> List[Path]:
    """Surface, POS, collocation, sonority and affect columns per text, plus dispersion plots for --words"""
    streams = raw_streams(load_documents(cfg, args.text, args.authors))
    graph = optional_graph(cfg)
    labels = load_labels(cfg) if graph is not None else None
    profiles = {
        s.doc_id: build_profile(
            s, graph,
            labels=labels,
            corpus_type_total=cfg.corpus_type_total,
            collocation_top=cfg.collocation_top,
            top_words=cfg.top_words,
        )
        for s in streams
    }
    written = [write_json(profiles, out / "profiles.json")]

    if args.words:
        targets = [w.lower() for w in args.words]
        for s in streams:
            positions = dispersion(s, targets)
            written.append(write_json(positions, out / f"dispersion_{s.doc_id}.json"))
            svg = render_figure("dispersion", positions, title=f"Lexical dispersion in {s.doc_id}")
            written.append(write_svg(svg, out / f"dispersion_{s.doc_id}.svg"))
    return written


def affect(cfg: RunConfig, args: argparse.Namespace, out: Path) -> List[Path]:
    """Affect means per text, per-word vectors and their principal components"""
    documents = load_documents(cfg, args.text, args.authors)
    graph = load_graph(cfg)
    labels = load_labels(cfg)

    stats, tables, written = {}, {}, []
    for doc_id, body in documents:
        _, filtered = pipeline(body, doc_id, do_stem=False)
        try:
            result = affect_scores(filtered, labels, graph)
        except NoScorableWordsError as e:
            logger.warning(f"⚠ {e}")
            continue
        stats[doc_id] = result.stats
        vectors = result.word_vectors.copy()
        vectors.index.name = "word"
        tables[f"affect_words_{doc_id}"] = vectors.reset_index()

        if len(vectors) < 2:
            continue
        components = affect_pca(vectors, min(3, len(vectors)))
        axes = [f"pc{i + 1}" for i in range(components.coordinates.shape[1])]
        tables[f"affect_pca_{doc_id}"] = matrix_frame(components.coordinates, vectors.index, axes, "word")
        if len(axes) >= 2:
            points = pd.DataFrame(components.coordinates[:, :2], index=vectors.index, columns=axes[:2])
            svg = render_figure("scatter", points, title=f"Affect space of {doc_id} (PCA)")
            written.append(write_svg(svg, out / f"affect_pca_{doc_id}.svg"))

    if not stats:
        raise InvalidArgumentError("no text had a word known to WordNet")
    tables["affect"] = stats
    return export_tables(tables, out) + written


def sonority(cfg: RunConfig, args: argparse.Namespace, out: Path) -> List[Path]:
    """Mean sonority per text; --words adds a per-word table"""
    streams = raw_streams(load_documents(cfg, args.text, args.authors))
    rows = [{"doc_id": s.doc_id, "tokens": len(s), "sonority_mean": sonority_text(s)} for s in streams]
    tables = {"sonority": pd.DataFrame(rows, columns=["doc_id", "tokens", "sonority_mean"])}
    if args.words:
        tables["sonority_words"] = pd.DataFrame([{"word": w, "sonority": sonority_word(w)} for w in args.words])
    return export_tables(tables, out)


def surprisal(cfg: RunConfig, args: argparse.Namespace, out: Path) -> List[Path]:
    """
    Train a trigram model on --train files (default: the corpus) and score
    every --score file, token by token.
    """
    if not args.score:
        raise InvalidArgumentError("--score needs at least one text file")
    model = train_trigram(
        raw_streams(load_documents(cfg, args.train)),
        k=cfg.lm_k,
        unk_singletons=cfg.lm_unk_singletons,
    )
    counts_path = out / "trigram_counts.txt"
    counts_path.parent.mkdir(parents=True, exist_ok=True)
    save_counts(model, counts_path)

    tables, summary = {}, []
    for stream in raw_streams(load_documents(cfg, args.score)):
        result = score_surprisal(model, stream)
        table = pd.DataFrame({"position": range(len(result.tokens)), "token": result.tokens, "surprisal": result.values})
        tables[f"surprisal_{stream.doc_id}"] = table
        summary.append({
            "doc_id": stream.doc_id,
            "tokens": len(result.tokens),
            "mean_surprisal": result.mean,
            "perplexity": result.perplexity,
        })
    tables["surprisal"] = pd.DataFrame(summary)
    return [counts_path] + export_tables(tables, out)
