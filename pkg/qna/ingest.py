"""
Corpus ingestion: manifest loading, decoding and per-author concatenation
"""
import logging
import unicodedata
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import pandas as pd

from .errors import DecodeFailure, InvalidArgumentError, MissingInputError
from .schemas import CompoundText, IngestError, IngestReport, RawText
from .text import tokenize

logger = logging.getLogger(__name__)

MANIFEST_COLUMNS = ["id", "author", "title", "year", "path"]
DEFAULT_ENCODINGS = ("utf-8", "latin-1")
SEPARATOR = "\n\n"


def read_manifest(manifest: Union[str, Path, pd.DataFrame]) -> pd.DataFrame:
    """Load the id,author,title,year,path table (CSV path or DataFrame)"""
    if isinstance(manifest, pd.DataFrame):
        df = manifest.copy()
    else:
        if not Path(manifest).is_file():
            raise MissingInputError(f"Manifest not found: {manifest}")
        df = pd.read_csv(manifest, dtype=str, keep_default_na=False)
    missing = [c for c in MANIFEST_COLUMNS if c not in df.columns]
    if missing:
        raise InvalidArgumentError(f"Manifest lacks columns: {', '.join(missing)}")
    return df[MANIFEST_COLUMNS].fillna("").astype(str)


def decode_bytes(data: bytes, path: str, encodings: Sequence[str] = DEFAULT_ENCODINGS) -> str:
    """
    Decode with the first encoding that succeeds, then normalize.

    The BOM is dropped, line endings become LF and the text is NFC-normalized.
    """
    first_error: Optional[UnicodeDecodeError] = None
    for encoding in encodings:
        try:
            text = data.decode(encoding)
            break
        except UnicodeDecodeError as e:
            first_error = first_error or e
    else:
        offset = first_error.start if first_error else 0
        raise DecodeFailure(path, offset, encodings)
    if text.startswith("\ufeff"):
        text = text[1:]
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    return unicodedata.normalize("NFC", text)


def _parse_year(value: str) -> Optional[int]:
    value = value.strip()
    return int(value) if value else None


def ingest_directory(
    root: Union[str, Path],
    manifest: Union[str, Path, pd.DataFrame],
    encodings: Sequence[str] = DEFAULT_ENCODINGS,
) -> IngestReport:
    """
    Load one RawText per manifest row.

    Rows whose file is missing, undecodable or invalid are collected as
    errors and ingestion continues with the next row.
    """
    root = Path(root)
    if not root.is_dir():
        raise MissingInputError(f"Corpus directory not found: {root}")
    df = read_manifest(manifest)

    report = IngestReport()
    for row_number, row in enumerate(df.itertuples(index=False), start=1):
        path = root / row.path
        try:
            if not path.is_file():
                raise MissingInputError(f"File not found: {path}")
            body = decode_bytes(path.read_bytes(), str(path), encodings)
            report.texts.append(RawText(
                id=row.id,
                author=row.author,
                title=row.title,
                year=_parse_year(row.year),
                body=body,
                source_path=str(path),
            ))
        except (MissingInputError, DecodeFailure, ValueError) as e:
            message = str(e).splitlines()[0]
            logger.warning(f"⚠ Manifest row {row_number} skipped: {message}")
            report.errors.append(IngestError(row=row_number, path=str(path), message=message))

    logger.info(f"✓ Ingested {len(report.texts)} texts ({len(report.errors)} errors)")
    return report


def concat_by_author(texts: List[RawText]) -> List[CompoundText]:
    """
    Join texts into one CompoundText per author.

    Authors appear in order of their first text and bodies are joined in input
    order with a blank line between them.
    """
    grouped: Dict[str, List[RawText]] = {}
    for text in texts:
        grouped.setdefault(text.author, []).append(text)

    compounds = []
    for author, items in grouped.items():
        body = SEPARATOR.join(t.body for t in items)
        compounds.append(CompoundText(
            author=author,
            body=body,
            source_ids=[t.id for t in items],
            word_count=len(tokenize(body)),
        ))
    return compounds


def length_check(
    compounds: List[CompoundText],
    reference: Union[str, Path, pd.DataFrame],
    tolerance: float = 0.05,
) -> pd.DataFrame:
    """
    Compare compound word counts with published lengths.

    Returns one row per author present in both tables with the relative
    deviation and whether it lies within tolerance.
    """
    ref = reference if isinstance(reference, pd.DataFrame) else pd.read_csv(reference)
    ref = ref.dropna(subset=["words"]).set_index("author")
    rows = []
    for compound in compounds:
        if compound.author not in ref.index:
            continue
        expected = float(ref.loc[compound.author, "words"])
        deviation = (compound.word_count - expected) / expected
        rows.append({
            "author": compound.author,
            "expected_words": int(expected),
            "word_count": compound.word_count,
            "deviation": deviation,
            "within_tolerance": abs(deviation) <= tolerance,
        })
    return pd.DataFrame(rows, columns=["author", "expected_words", "word_count", "deviation", "within_tolerance"])
