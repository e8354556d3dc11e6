"""
Rule-based cleaning of raw poetry files.

Removes Gutenberg boilerplate, prose front/back matter, footnotes, line
numbers, non-English stanzas and duplicate poems. Every removed character is
attributed to the rule that removed it, in offsets of the input body.
"""
import logging
import re
from functools import lru_cache
from pathlib import Path
from typing import FrozenSet, List, Optional, Sequence, Set, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from .config import data_file, iter_data_lines
from .errors import ExportError
from .schemas import CleaningReport, CleaningRules, RawText, RemovedSpan
from .text import WORD_RE

logger = logging.getLogger(__name__)

Span = Tuple[int, int]

# A stanza is a run of consecutive non-blank lines
STANZA_RE = re.compile(r"(?:[^\n]*\S[^\n]*(?:\n|$))+")
ROMAN_RE = re.compile(r"^[IVXLCDM]+\.?$")
MAX_HEADING_LEN = 60
EXCERPT_LEN = 80


@lru_cache(maxsize=1)
def function_words() -> FrozenSet[str]:
    return frozenset(iter_data_lines(data_file("function_words.txt")))


def _words(text: str) -> List[str]:
    return [m.group().lower().replace("’", "'") for m in WORD_RE.finditer(text)]


def _is_heading(line: str) -> bool:
    """Short all-caps line or bare roman numeral"""
    line = line.strip()
    if not line or len(line) > MAX_HEADING_LEN:
        return False
    if ROMAN_RE.match(line):
        return True
    return any(c.isalpha() for c in line) and line == line.upper()


class _Workspace:
    """Current text plus a map from its characters back to input offsets"""

    def __init__(self, body: str):
        self.text = body
        self.origin = np.arange(len(body), dtype=np.int64)
        self.reason_codes = np.full(len(body), -1, dtype=np.int64)
        self.reasons: List[str] = []

    def remove(self, spans: Sequence[Span], reason: str) -> bool:
        keep = np.ones(len(self.text), dtype=bool)
        for start, end in spans:
            keep[start:end] = False
        if keep.all():
            return False
        if reason not in self.reasons:
            self.reasons.append(reason)
        self.reason_codes[self.origin[~keep]] = self.reasons.index(reason)
        self.text = "".join(c for c, k in zip(self.text, keep) if k)
        self.origin = self.origin[keep]
        return True

    def spans(self, body: str) -> List[RemovedSpan]:
        codes = self.reason_codes
        if not len(codes):
            return []
        change = np.flatnonzero(np.diff(codes)) + 1
        starts = np.concatenate(([0], change))
        ends = np.concatenate((change, [len(codes)]))
        spans = []
        for start, end in zip(starts.tolist(), ends.tolist()):
            code = codes[start]
            if code < 0:
                continue
            spans.append(RemovedSpan(
                start=start, end=end, reason=self.reasons[code],
                excerpt=body[start:end][:EXCERPT_LEN],
            ))
        return spans


# ============== Rules ==============
# Each rule maps the current text to the spans it would remove.

def _boilerplate_header(text: str, rules: CleaningRules) -> List[Span]:
    m = re.search(rules.boilerplate_start, text, re.MULTILINE)
    return [(0, m.end())] if m else []


def _boilerplate_footer(text: str, rules: CleaningRules) -> List[Span]:
    m = re.search(rules.boilerplate_end, text, re.MULTILINE)
    return [(m.start(), len(text))] if m else []


def _lines_after(text: str, pos: int) -> List[Tuple[int, str]]:
    return [(m.start(), m.group()) for m in re.finditer(r"^[^\n]*$", text, re.MULTILINE) if m.start() > pos]


def _section_end(text: str, marker_end: int) -> int:
    """
    End of a prose section opened by a marker line.

    The section runs up to the first heading followed by a non-heading line
    (the title of the next poem); without one, it covers the marker and the
    paragraph after it.
    """
    lines = _lines_after(text, marker_end)
    for i, (start, line) in enumerate(lines):
        if not _is_heading(line):
            continue
        following = next((l for _, l in lines[i + 1:] if l.strip()), None)
        if following is not None and not _is_heading(following):
            return start
    in_paragraph = False
    for start, line in lines:
        if line.strip():
            in_paragraph = True
        elif in_paragraph:
            return start
    return len(text)


def _header_sections(text: str, rules: CleaningRules) -> List[Span]:
    spans = []
    for pattern in rules.header_markers:
        for m in re.finditer(pattern, text, re.MULTILINE):
            spans.append((m.start(), _section_end(text, m.end())))
    return spans


def _footer_sections(text: str, rules: CleaningRules) -> List[Span]:
    starts = [m.start() for p in rules.footer_markers for m in re.finditer(p, text, re.MULTILINE)]
    return [(min(starts), len(text))] if starts else []


def _footnotes(text: str, rules: CleaningRules) -> List[Span]:
    return [m.span() for m in re.finditer(rules.footnote_pattern, text, re.MULTILINE)]


def _line_numbers(text: str, rules: CleaningRules) -> List[Span]:
    return [m.span() for m in re.finditer(rules.line_number_pattern, text, re.MULTILINE) if m.end() > m.start()]


def english_hit_rate(text: str) -> Optional[float]:
    """Share of tokens that are English function words; None for no tokens"""
    words = _words(text)
    if not words:
        return None
    vocab = function_words()
    return sum(w in vocab for w in words) / len(words)


def _non_english_stanzas(text: str, rules: CleaningRules) -> List[Span]:
    detector = rules.non_english
    spans = []
    for m in STANZA_RE.finditer(text):
        if len(_words(m.group())) < detector.min_tokens:
            continue
        if english_hit_rate(m.group()) < detector.threshold:
            spans.append(m.span())
    return spans


def poem_blocks(text: str, separator: str) -> List[Span]:
    """Spans of the blocks between poem separators, whitespace-only blocks skipped"""
    spans, start = [], 0
    for m in re.finditer(separator, text):
        spans.append((start, m.start()))
        start = m.end()
    spans.append((start, len(text)))
    return [(s, e) for s, e in spans if text[s:e].strip()]


def shingles(words: Sequence[str], size: int) -> Set[Tuple[str, ...]]:
    return {tuple(words[i:i + size]) for i in range(len(words) - size + 1)}


def jaccard(a: Set, b: Set) -> float:
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)


def _duplicates(text: str, rules: CleaningRules) -> List[Span]:
    size = rules.shingle_size
    kept: List[Set[Tuple[str, ...]]] = []
    spans = []
    for start, end in poem_blocks(text, rules.poem_separator):
        words = _words(text[start:end])
        # Titles and other short blocks are never judged
        if len(words) < size:
            continue
        current = shingles(words, size)
        if any(jaccard(current, seen) >= rules.duplicate_similarity_threshold for seen in kept):
            spans.append((start, end))
        else:
            kept.append(current)
    return spans


def _outer_whitespace(text: str, rules: CleaningRules) -> List[Span]:
    stripped = text.strip()
    if not stripped:
        return [(0, len(text))]
    lead = len(text) - len(text.lstrip())
    trail = len(text.rstrip())
    return [(0, lead), (trail, len(text))]


RULES = [
    ("boilerplate-header", _boilerplate_header),
    ("boilerplate-footer", _boilerplate_footer),
    ("header", _header_sections),
    ("footer", _footer_sections),
    ("footnote", _footnotes),
    ("line-number", _line_numbers),
    ("non-English", _non_english_stanzas),
    ("duplicate", _duplicates),
    ("whitespace", _outer_whitespace),
]


def clean_text(raw: RawText, rules: Optional[CleaningRules] = None) -> Tuple[RawText, CleaningReport]:
    """
    Apply every cleaning rule until none of them changes the text.

    Returns the cleaned copy of raw and a report whose spans, in offsets of
    raw.body, cover exactly the removed characters. An empty result is valid.
    """
    rules = rules or CleaningRules.default()
    ws = _Workspace(raw.body)
    passes = 0
    changed = True
    while changed:
        passes += 1
        changed = False
        for reason, rule in RULES:
            if ws.remove(rule(ws.text, rules), reason):
                changed = True

    report = CleaningReport(
        source_id=raw.id,
        input_chars=len(raw.body),
        output_chars=len(ws.text),
        passes=passes,
        spans=ws.spans(raw.body),
    )
    if report.empty:
        logger.warning(f"⚠ {raw.id}: nothing left after cleaning")
    return raw.model_copy(update={"body": ws.text}), report


def clean_corpus(
    texts: List[RawText],
    rules: Optional[CleaningRules] = None,
    n_jobs: int = 1,
) -> List[Tuple[RawText, CleaningReport]]:
    """Clean files independently, in parallel when n_jobs != 1; input order is kept"""
    rules = rules or CleaningRules.default()
    results = Parallel(n_jobs=n_jobs)(delayed(clean_text)(t, rules) for t in texts)
    removed = sum(r.input_chars - r.output_chars for _, r in results)
    logger.info(f"✓ Cleaned {len(results)} texts, {removed} characters removed")
    return results


def _target_path(text: RawText, out_dir: Path, root: Optional[Path]) -> Path:
    if root is not None and text.source_path:
        try:
            return out_dir / Path(text.source_path).resolve().relative_to(root.resolve())
        except ValueError:
            pass
    return out_dir / f"{text.id}.txt"


def write_cleaned(
    results: List[Tuple[RawText, CleaningReport]],
    out_dir: Union[str, Path],
    root: Optional[Union[str, Path]] = None,
) -> List[Path]:
    """
    Mirror cleaned bodies under out_dir with a JSON report next to each.

    Files under root keep their relative path; others are named after their id.
    """
    out_dir = Path(out_dir)
    root = Path(root) if root is not None else None
    written = []
    try:
        for text, report in results:
            target = _target_path(text, out_dir, root)
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text.body, encoding="utf-8")
            target.with_name(target.name + ".report.json").write_text(
                report.model_dump_json(indent=2), encoding="utf-8"
            )
            written.append(target)
    except OSError as e:
        raise ExportError(f"Cannot write cleaned texts to {out_dir}: {e}") from e
    return written
