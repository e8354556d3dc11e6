"""
Corpus commands: cleaning and the document-term matrix
"""
import argparse
import logging
from pathlib import Path
from typing import List

from ..cleaning import write_cleaned
from ..config import RunConfig, data_file
from ..dtm import rates_per_1000, save_dtm
from ..ingest import concat_by_author, length_check
from ..report.export import export_tables
from .common import build_matrix, load_cleaned, load_compounds

logger = logging.getLogger(__name__)


def clean(cfg: RunConfig, args: argparse.Namespace, out: Path) -> List[Path]:
    """
    Cleaned copies of every manifest text with their removal reports, the
    ingestion errors and a length check against the published word counts.
    """
    report, cleaned = load_cleaned(cfg)
    written = write_cleaned(cleaned, out / "cleaned", root=cfg.corpus_dir)
    compounds = concat_by_author([text for text, _ in cleaned])
    lengths = length_check(compounds, data_file("gepc_reference.csv"))
    written += export_tables({"ingest_errors": report.errors, "length_check": lengths}, out)
    off = int((~lengths["within_tolerance"]).sum()) if len(lengths) else 0
    if off:
        logger.warning(f"⚠ {off} authors deviate more than 5% from the published length")
    logger.info(f"✓ {len(cleaned)} texts cleaned ({report.status})")
    return written


def dtm(cfg: RunConfig, args: argparse.Namespace, out: Path) -> List[Path]:
    """Stemmed author-by-term counts plus their per-1000 rates"""
    compounds = load_compounds(cfg)
    vocab, m = build_matrix(cfg, compounds)
    path = out / "dtm.csv"
    save_dtm(vocab, m, path)
    rates = rates_per_1000(m, vocab)
    rates.index.name = "doc_id"
    logger.info(f"✓ DTM: {m.shape[0]} documents x {m.shape[1]} terms")
    written = [path, path.with_suffix(".vocab.csv"), path.with_suffix(".rows.csv")]
    return written + export_tables({"rates": rates.reset_index()}, out)
