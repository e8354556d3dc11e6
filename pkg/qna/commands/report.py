"""
The full chain: every corpus analysis into one output tree plus a plain-text index
"""
import argparse
import logging
from pathlib import Path
from typing import Dict, List

from ..config import RunConfig
from ..errors import ExportError
from . import analysis, corpus, texts
from .common import Command, shared_corpus

logger = logging.getLogger(__name__)


def _steps(cfg: RunConfig, args: argparse.Namespace) -> Dict[str, Command]:
    steps: Dict[str, Command] = {
        "clean": corpus.clean,
        "dtm": corpus.dtm,
        "similarity": analysis.similarity,
        "topics": analysis.topics,
        "profile": texts.profile,
        "sonority": texts.sonority,
    }
    if cfg.wordnet_dir is not None:
        steps["affect"] = texts.affect
    if args.authors:
        steps["distinct"] = analysis.distinct
        steps["bayes"] = analysis.bayes
    return steps


def _summary(cfg: RunConfig, out: Path, produced: Dict[str, List[Path]]) -> str:
    lines = [
        "QNA report",
        f"corpus: {cfg.corpus_dir}",
        f"wordnet: {cfg.wordnet_dir or '-'}",
        f"seed: {cfg.seed}",
        "",
    ]
    for step, paths in produced.items():
        lines.append(f"[{step}]")
        lines.extend(f"  {p.relative_to(out).as_posix()}" for p in sorted(paths))
        lines.append("")
    return "\n".join(lines)


def report(cfg: RunConfig, args: argparse.Namespace, out: Path) -> List[Path]:
    """
    Run clean, dtm, similarity, topics, profile and sonority, plus affect when
    WordNet is configured and distinct/bayes when --authors names a pair.
    Each step writes into its own subdirectory; the corpus is read and
    cleaned once for all of them.
    """
    # per-text steps always run on the corpus here
    step_args = argparse.Namespace(**{**vars(args), "text": None})
    produced: Dict[str, List[Path]] = {}
    with shared_corpus():
        for name, command in _steps(cfg, args).items():
            logger.info(f"Report step: {name}")
            produced[name] = command(cfg, step_args, out / name)

    summary = out / "summary.txt"
    try:
        summary.write_text(_summary(cfg, out, produced), encoding="utf-8")
    except OSError as e:
        raise ExportError(f"Cannot write {summary}: {e}") from e
    written = [p for paths in produced.values() for p in paths]
    logger.info(f"✓ Report: {len(produced)} steps, {len(written)} files")
    return written + [summary]
