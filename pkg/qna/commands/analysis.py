"""
Corpus-level analyses: similarity map, topics and author-pair distinctiveness
"""
import argparse
import logging
from pathlib import Path
from typing import List

import pandas as pd

from ..config import RunConfig
from ..distinctive import bayes_comparison, corpus_average_rates, keyness_scores, rank_comparison, unique_words
from ..dtm import rates_per_1000
from ..ml.numerics import lsa_distance_map, nmf, topic_coverage
from ..report.export import export_tables, keyness_frame, matrix_frame, posterior_frame, rates_table, write_json, write_svg
from ..report.figures import render_figure
from ..schemas import GibbsConfig
from ..text import stem_word
from .common import build_matrix, load_compounds, require_pair

logger = logging.getLogger(__name__)


def similarity(cfg: RunConfig, args: argparse.Namespace, out: Path) -> List[Path]:
    """LSA + MDS author map: coordinates, distances and a labeled scatter"""
    compounds = load_compounds(cfg)
    vocab, m = build_matrix(cfg, compounds)
    embedding, distances = lsa_distance_map(m.counts, cfg.lsa_components, cfg.mds_dims, cfg.seed)

    axes = [f"dim{i + 1}" for i in range(embedding.coordinates.shape[1])]
    coords = pd.DataFrame(embedding.coordinates, index=m.rows, columns=axes)
    scatter = render_figure("scatter", coords, title="Author similarity (LSA + MDS)")
    logger.info(f"✓ Similarity map of {len(m.rows)} authors, stress {embedding.stress:.4f}")
    written = export_tables({
        "coordinates": matrix_frame(embedding.coordinates, m.rows, axes),
        "distances": matrix_frame(distances, m.rows, m.rows),
        "mds": {"stress": embedding.stress, "eigenvalues": embedding.eigenvalues},
    }, out)
    return written + [write_svg(scatter, out / "similarity.svg")]


def topics(cfg: RunConfig, args: argparse.Namespace, out: Path) -> List[Path]:
    """NMF topics: document-topic shares, top terms, coverage and a heatmap"""
    compounds = load_compounds(cfg)
    vocab, m = build_matrix(cfg, compounds)
    model = nmf(m.counts, cfg.nmf_topics, cfg.nmf_max_iters, cfg.nmf_tol, cfg.seed,
                terms=vocab.terms, top_n=cfg.top_terms)

    labels = [f"topic{t + 1}" for t in range(model.k)]
    shares = pd.DataFrame(model.doc_topic, index=m.rows, columns=labels)
    terms = pd.DataFrame(
        [(label, rank + 1, term) for label, top in zip(labels, model.top_terms) for rank, term in enumerate(top)],
        columns=["topic", "rank", "term"],
    )
    coverage = pd.DataFrame({"doc_id": m.rows, "topics_covered": topic_coverage(model.doc_topic)})
    heatmap = render_figure("heatmap", shares, title=f"{model.k} topics per author (NMF)")
    written = export_tables({
        "doc_topics": matrix_frame(model.doc_topic, m.rows, labels),
        "topic_terms": terms,
        "topic_coverage": coverage,
        "nmf": {"k": model.k, "iterations": model.n_iter, "error": model.reconstruction_error(m.counts)},
    }, out)
    return written + [write_svg(heatmap, out / "topics.svg")]


def distinct(cfg: RunConfig, args: argparse.Namespace, out: Path) -> List[Path]:
    """Unique words and keyness of one author against another, over the whole corpus"""
    a, b = require_pair(args.authors)
    compounds = load_compounds(cfg)
    vocab, m = build_matrix(cfg, compounds)
    rates = rates_per_1000(m, vocab)
    avg = corpus_average_rates(rates)

    tables = {
        "unique_words": keyness_frame(unique_words(rates, a, b, avg)),
        "keyness": keyness_frame(keyness_scores(rates, a, b, avg)),
    }
    if args.words:
        stems = [stem_word(w.lower()) for w in args.words]
        table = rates_table(rates, [a, b], stems)
        table.columns = ["doc_id", *args.words]
        tables["word_rates"] = table
    return export_tables(tables, out)


def bayes(cfg: RunConfig, args: argparse.Namespace, out: Path) -> List[Path]:
    """
    Bayesian segment-rate comparison for --words, or for the top keyness
    terms of the pair when no words are given.
    """
    a, b = require_pair(args.authors)
    pair = load_compounds(cfg, [a, b])
    words = list(args.words or [])
    if not words:
        vocab, m = build_matrix(cfg.model_copy(update={"max_doc_fraction": 1.0}), pair)
        rates = rates_per_1000(m, vocab)
        words = [r.word for r in keyness_scores(rates, a, b)[:cfg.top_terms]]
        logger.info(f"No --words given, comparing the {len(words)} strongest keyness terms")

    gibbs = GibbsConfig(n_samples=cfg.gibbs_samples, burn_in=cfg.gibbs_burn_in, seed=cfg.seed)
    runs = bayes_comparison(words, (pair[0], pair[1]), cfg.segment_len, gibbs, n_jobs=cfg.n_jobs)
    ranking = rank_comparison(runs)

    written = export_tables({"bayes": keyness_frame(ranking)}, out)
    written += export_tables({word: posterior_frame(posterior) for word, (_, posterior) in runs.items()},
                             out / "posteriors")
    means = {word: posterior.delta_mean for word, (_, posterior) in runs.items()}
    written.append(write_json({"authors": [a, b], "delta_mean": means, "segment_len": cfg.segment_len},
                              out / "bayes.json"))
    return written
