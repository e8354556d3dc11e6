"""
Byte-stable CSV/JSON export of analysis results
"""
import json
import logging
from pathlib import Path
from typing import Any, List, Mapping, Sequence, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel

from ..errors import ExportError
from ..schemas import KeynessResult, PosteriorSamples

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.4f"
DECIMALS = 4
KEYNESS_COLUMNS = ["word", "rate_a", "rate_b", "corpus_avg", "unique_to", "keyness", "p_delta_neg"]


def _rounded(value: Any) -> Any:
    """JSON-ready copy with floats rounded to DECIMALS places"""
    if isinstance(value, BaseModel):
        return _rounded(value.model_dump())
    if isinstance(value, Mapping):
        return {str(k): _rounded(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_rounded(v) for v in value]
    if isinstance(value, np.ndarray):
        return _rounded(value.tolist())
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return round(float(value), DECIMALS) if np.isfinite(value) else None
    return value


def write_csv(frame: pd.DataFrame, path: Union[str, Path], index: bool = False) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=index, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as e:
        raise ExportError(f"Cannot write {path}: {e}") from e
    return path


def write_json(data: Any, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(_rounded(data), sort_keys=True, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    except OSError as e:
        raise ExportError(f"Cannot write {path}: {e}") from e
    return path


def write_svg(svg: str, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(svg, encoding="utf-8")
    except OSError as e:
        raise ExportError(f"Cannot write {path}: {e}") from e
    return path


# ============== Table layouts ==============

def keyness_frame(results: Sequence[KeynessResult]) -> pd.DataFrame:
    rows = [{
        "word": r.word,
        "rate_a": r.rate_a,
        "rate_b": r.rate_b,
        "corpus_avg": r.corpus_avg_rate,
        "unique_to": r.unique_to,
        "keyness": r.keyness,
        "p_delta_neg": r.p_delta_neg,
    } for r in results]
    return pd.DataFrame(rows, columns=KEYNESS_COLUMNS)


def rates_table(rates: pd.DataFrame, docs: Sequence[str], words: Sequence[str]) -> pd.DataFrame:
    """Docs x words slice of a rate matrix; words missing from the vocabulary read 0"""
    table = rates.reindex(index=list(docs), columns=list(words), fill_value=0.0)
    table.index.name = "doc_id"
    return table.reset_index()


def matrix_frame(matrix: np.ndarray, index: Sequence[str], columns: Sequence[str], index_name: str = "doc_id") -> pd.DataFrame:
    frame = pd.DataFrame(np.asarray(matrix), index=list(index), columns=list(columns))
    frame.index.name = index_name
    return frame.reset_index()


def posterior_frame(samples: PosteriorSamples) -> pd.DataFrame:
    return pd.DataFrame({"delta": samples.delta_draws})


def export_tables(results: Mapping[str, Any], out_dir: Union[str, Path]) -> List[Path]:
    """
    Write each named result: DataFrames as <name>.csv, everything else as <name>.json.
    """
    out_dir = Path(out_dir)
    written = []
    for name in sorted(results):
        value = results[name]
        if isinstance(value, pd.DataFrame):
            written.append(write_csv(value, out_dir / f"{name}.csv"))
        else:
            written.append(write_json(value, out_dir / f"{name}.json"))
    logger.info(f"✓ Exported {len(written)} tables to {out_dir}")
    return written
