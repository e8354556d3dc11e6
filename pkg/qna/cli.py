"""
QNA Toolkit - command-line entry point
"""
import argparse
import logging
import shutil
import sys
import tempfile
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import __version__
from .commands import analysis, corpus, report, texts
from .commands.common import Command
from .config import RunConfig, load_config
from .errors import ExportError, QNAError

logger = logging.getLogger(__name__)

COMMANDS: Dict[str, Command] = {
    "clean": corpus.clean,
    "dtm": corpus.dtm,
    "similarity": analysis.similarity,
    "topics": analysis.topics,
    "distinct": analysis.distinct,
    "bayes": analysis.bayes,
    "profile": texts.profile,
    "affect": texts.affect,
    "sonority": texts.sonority,
    "surprisal": texts.surprisal,
    "report": report.report,
}

# flag dest -> RunConfig field
OVERRIDES = {
    "corpus": "corpus_dir",
    "manifest": "manifest_name",
    "wordnet": "wordnet_dir",
    "out": "output_dir",
    "seed": "seed",
    "topics": "nmf_topics",
    "segment_len": "segment_len",
    "min_count": "min_count",
    "max_doc_fraction": "max_doc_fraction",
    "n_jobs": "n_jobs",
    "log_level": "log_level",
}


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("run options (defaults come from the settings listed below)")
    group.add_argument("--config", type=Path, help="key=value settings file, merged under the flags")
    group.add_argument("--corpus", type=Path, help="corpus directory holding the manifest")
    group.add_argument("--manifest", help="manifest file name inside the corpus directory")
    group.add_argument("--wordnet", type=Path, help="WordNet 3.0 dict directory (or WORDNET_DIR)")
    group.add_argument("--out", type=Path, help="output directory")
    group.add_argument("--seed", type=int, help="master random seed")
    group.add_argument("--topics", type=int, metavar="K", help="number of NMF topics")
    group.add_argument("--segment-len", type=int, metavar="N", help="tokens per segment in bayes")
    group.add_argument("--min-count", type=int, help="minimum corpus count of a DTM term")
    group.add_argument("--max-doc-fraction", type=float, help="maximum document fraction of a DTM term")
    group.add_argument("--n-jobs", type=int, help="parallel workers (joblib)")
    group.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")

    inputs = common.add_argument_group("inputs")
    inputs.add_argument("--text", type=Path, nargs="+", help="loose text files instead of the corpus")
    inputs.add_argument("--authors", nargs="+", help="authors to analyse; distinct and bayes need two")
    inputs.add_argument("--words", nargs="+", help="target words")
    inputs.add_argument("--train", type=Path, nargs="+", help="surprisal training files (default: the corpus)")
    inputs.add_argument("--score", type=Path, nargs="+", help="files scored by surprisal")
    return common


def build_parser() -> argparse.ArgumentParser:
    epilog = "settings (environment prefix QNA_):\n" + RunConfig.describe()
    parser = argparse.ArgumentParser(
        prog="qna",
        description="Quantitative narrative analysis of English poetry",
        epilog=epilog,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="command", required=True)
    common = _common_options()
    for name, command in COMMANDS.items():
        summary = (command.__doc__ or "").strip().splitlines()[0]
        subparsers.add_parser(
            name,
            parents=[common],
            help=summary,
            description=summary,
            epilog=epilog,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    overrides = {field: getattr(args, dest) for dest, field in OVERRIDES.items()}
    return load_config(args.config, overrides)


def _publish(staging: Path, target: Path) -> None:
    """Move every staged entry into target, replacing what is there"""
    target.mkdir(parents=True, exist_ok=True)
    for entry in sorted(staging.iterdir()):
        destination = target / entry.name
        if destination.is_dir():
            shutil.rmtree(destination)
        elif destination.exists():
            destination.unlink()
        shutil.move(str(entry), str(destination))


def run_subcommand(name: str, cfg: RunConfig, args: argparse.Namespace) -> List[Path]:
    """
    Run one subcommand with outputs staged in a hidden directory of the output directory.

    Outputs appear under cfg.output_dir only when the command succeeds;
    a failing command leaves nothing behind.
    """
    command = COMMANDS[name]
    target = Path(cfg.output_dir)
    try:
        target.mkdir(parents=True, exist_ok=True)
        staging = Path(tempfile.mkdtemp(prefix=f".staging-{name}-", dir=target))
    except OSError as e:
        raise ExportError(f"Cannot create output directory {target}: {e}") from e
    try:
        written = command(cfg, args, staging)
        _publish(staging, target)
    finally:
        shutil.rmtree(staging, ignore_errors=True)
    logger.info(f"✓ {name}: {len(written)} files in {target}")
    return [target / p.relative_to(staging) for p in written]


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        logging.basicConfig(
            level=cfg.log_level,
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            force=True,
        )
        run_subcommand(args.command, cfg, args)
    except QNAError as e:
        sys.stderr.write(f"qna {args.command}: error: {str(e).splitlines()[0]}\n")
        return 2
    return 0
