"""
WordNet 3.0 database reader: synset graph, morphology and path similarity.

Reads the plain dictionary files (index.*, data.*, *.exc) directly. Synset ids
are "<8-digit byte offset>-<pos>" with adjective satellites folded into "a".
"""
import logging
import os
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Set, Tuple, Union

import joblib

from .errors import MissingInputError, WordNetParseError

logger = logging.getLogger(__name__)

ROOT = "*ROOT*"
HYPERNYM_SYMBOLS = {"@", "@i"}
HYPONYM_SYMBOLS = {"~", "~i"}


class POS(str, Enum):
    NOUN = "n"
    VERB = "v"
    ADJ = "a"
    ADV = "r"

    @property
    def file_suffix(self) -> str:
        return {"n": "noun", "v": "verb", "a": "adj", "r": "adv"}[self.value]


POS_ORDER = [POS.NOUN, POS.VERB, POS.ADJ, POS.ADV]

MORPHOLOGICAL_SUBSTITUTIONS = {
    POS.NOUN: [
        ("s", ""), ("ses", "s"), ("ves", "f"), ("xes", "x"), ("zes", "z"),
        ("ches", "ch"), ("shes", "sh"), ("men", "man"), ("ies", "y"),
    ],
    POS.VERB: [
        ("s", ""), ("ies", "y"), ("es", "e"), ("es", ""),
        ("ed", "e"), ("ed", ""), ("ing", "e"), ("ing", ""),
    ],
    POS.ADJ: [("er", ""), ("est", ""), ("er", "e"), ("est", "e")],
    POS.ADV: [],
}


def _fold_pos(tag: str) -> POS:
    return POS.ADJ if tag == "s" else POS(tag)


def synset_id(offset: int, tag: str) -> str:
    return f"{offset:08d}-{_fold_pos(tag).value}"


@dataclass
class Synset:
    id: str
    pos: POS
    lemmas: Tuple[str, ...]
    hypernyms: List[str] = field(default_factory=list)
    hyponyms: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class SimilarityScore:
    """Path similarity in (0, 1]; value None marks a miss"""
    value: Optional[float] = None

    @property
    def miss(self) -> bool:
        return self.value is None

    def __float__(self) -> float:
        return 0.0 if self.value is None else self.value


class SynsetGraph:
    """Parsed WordNet database; immutable once built"""

    def __init__(
        self,
        synsets: Dict[str, Synset],
        lemma_index: Dict[Tuple[str, POS], Tuple[str, ...]],
        exceptions: Dict[POS, Dict[str, List[str]]],
        simulate_root: bool = True,
    ):
        self.synsets = synsets
        self.lemma_index = lemma_index
        self.exceptions = exceptions
        self.simulate_root = simulate_root
        self.noun_roots = [s.id for s in synsets.values() if s.pos is POS.NOUN and not s.hypernyms]
        self._distances: Dict[Tuple[str, bool], Dict[str, int]] = {}
        self._word_synsets: Dict[str, Tuple[str, ...]] = {}

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_distances"] = {}
        state["_word_synsets"] = {}
        return state

    def __len__(self) -> int:
        return len(self.synsets)

    def count(self, pos: POS) -> int:
        return sum(1 for s in self.synsets.values() if s.pos is pos)

    # ============== Morphology ==============

    def morphy(self, form: str, pos: POS) -> List[str]:
        """
        Base forms of form indexed under pos.

        The exception list wins when it knows the form; otherwise detachment
        rules are applied repeatedly until some candidate is indexed.
        """
        def indexed(forms):
            seen, result = set(), []
            for f in forms:
                if (f, pos) in self.lemma_index and f not in seen:
                    seen.add(f)
                    result.append(f)
            return result

        def detach(forms):
            return [f[:-len(old)] + new for f in forms for old, new in MORPHOLOGICAL_SUBSTITUTIONS[pos] if f.endswith(old)]

        exceptions = self.exceptions.get(pos, {})
        if form in exceptions:
            return indexed([form] + exceptions[form])

        forms = detach([form])
        found = indexed([form] + forms)
        while not found and forms:
            forms = detach(forms)
            found = indexed(forms)
        return found

    def synsets_of(self, word: str, pos: Optional[POS] = None) -> Tuple[str, ...]:
        """Synset ids of a word in database sense order, nouns first"""
        word = word.lower().replace(" ", "_")
        key = f"{word}|{pos.value if pos else ''}"
        if key in self._word_synsets:
            return self._word_synsets[key]
        ids: List[str] = []
        for p in ([pos] if pos else POS_ORDER):
            for form in self.morphy(word, p):
                ids.extend(i for i in self.lemma_index[(form, p)] if i not in ids)
        self._word_synsets[key] = tuple(ids)
        return self._word_synsets[key]

    # ============== Paths ==============

    def needs_root(self, synset: str) -> bool:
        if self.synsets[synset].pos is POS.NOUN:
            return len(self.noun_roots) > 1
        return True

    def hypernym_distances(self, synset: str, simulate_root: bool = False) -> Dict[str, int]:
        """Breadth-first distance to every ancestor (and to the virtual root)"""
        key = (synset, simulate_root)
        if key in self._distances:
            return self._distances[key]
        distances: Dict[str, int] = {}
        queue = deque([(synset, 0)])
        while queue:
            node, depth = queue.popleft()
            if node in distances:
                continue
            distances[node] = depth
            queue.extend((h, depth + 1) for h in self.synsets[node].hypernyms)
        if simulate_root:
            distances[ROOT] = max(distances.values()) + 1
        self._distances[key] = distances
        return distances

    def shortest_path_distance(self, s1: str, s2: str, simulate_root: Optional[bool] = None) -> Optional[int]:
        """Edges on the shortest path through a common ancestor; None without one"""
        if s1 == s2:
            return 0
        simulate_root = self.simulate_root if simulate_root is None else simulate_root
        use_root = simulate_root and (self.needs_root(s1) or self.needs_root(s2))
        d1 = self.hypernym_distances(s1, use_root)
        d2 = self.hypernym_distances(s2, use_root)
        if len(d2) < len(d1):
            d1, d2 = d2, d1
        return min((d + d2[node] for node, d in d1.items() if node in d2), default=None)

    def path_similarity(self, s1: str, s2: str, simulate_root: Optional[bool] = None) -> Optional[float]:
        distance = self.shortest_path_distance(s1, s2, simulate_root)
        return None if distance is None else 1.0 / (1 + distance)


def word_path_similarity(w1: str, w2: str, graph: SynsetGraph, simulate_root: Optional[bool] = None) -> SimilarityScore:
    """Maximum path similarity over all synset pairs of the two words, any POS"""
    synsets1 = graph.synsets_of(w1)
    synsets2 = graph.synsets_of(w2)
    if not synsets1 or not synsets2:
        return SimilarityScore(None)
    if set(synsets1) & set(synsets2):
        return SimilarityScore(1.0)
    best = None
    for s1 in synsets1:
        for s2 in synsets2:
            sim = graph.path_similarity(s1, s2, simulate_root)
            if sim is not None and (best is None or sim > best):
                best = sim
    return SimilarityScore(best)


def pos_of_word(lemma: str, graph: SynsetGraph) -> Set[POS]:
    """POS categories under which the word or one of its base forms is indexed"""
    word = lemma.lower().replace(" ", "_")
    return {pos for pos in POS_ORDER if graph.morphy(word, pos)}


# ============== Parsing ==============

def _iter_lines(path: Path) -> Iterator[Tuple[int, str]]:
    """(byte offset, decoded line) for every non-license line"""
    offset = 0
    with open(path, "rb") as fp:
        for raw in fp:
            start = offset
            offset += len(raw)
            if raw.startswith(b"  ") or not raw.strip():
                continue
            try:
                yield start, raw.decode("utf-8").rstrip("\n")
            except UnicodeDecodeError as e:
                raise WordNetParseError(str(path), start, f"invalid UTF-8: {e.reason}") from e


def _parse_data_line(line: str, pos: POS) -> Tuple[int, Synset, List[Tuple[str, str]]]:
    fields = line.split("|", 1)[0].split()
    it = iter(fields)
    offset = int(next(it))
    next(it)  # lexicographer file
    tag = next(it)
    if _fold_pos(tag) is not pos:
        raise ValueError(f"pos '{tag}' in data.{pos.file_suffix}")
    lemmas = []
    for _ in range(int(next(it), 16)):
        name = next(it)
        next(it)  # lex_id
        lemmas.append(name.split("(", 1)[0])
    pointers = []
    for _ in range(int(next(it))):
        symbol, target, target_tag, _source_target = next(it), int(next(it)), next(it), next(it)
        if symbol in HYPERNYM_SYMBOLS or symbol in HYPONYM_SYMBOLS:
            pointers.append((symbol, synset_id(target, target_tag)))
    return offset, Synset(id=synset_id(offset, tag), pos=pos, lemmas=tuple(lemmas)), pointers


def _parse_index_line(line: str) -> Tuple[str, POS, List[int]]:
    it = iter(line.split())
    lemma = next(it)
    pos = _fold_pos(next(it))
    n_synsets = int(next(it))
    for _ in range(int(next(it))):
        next(it)  # pointer symbols
    if int(next(it)) != n_synsets:
        raise ValueError("sense count differs from synset count")
    next(it)  # tagged sense count
    offsets = [int(next(it)) for _ in range(n_synsets)]
    if not offsets:
        raise ValueError("no synsets")
    return lemma, pos, offsets


def _required_files(root: Path) -> Dict[str, Path]:
    files = {}
    for pos in POS_ORDER:
        for kind in ("index", "data"):
            name = f"{kind}.{pos.file_suffix}"
            files[name] = root / name
    missing = [name for name, path in files.items() if not path.is_file()]
    if missing:
        raise MissingInputError(f"WordNet file missing in {root}: {', '.join(missing)}")
    return files


def _drop_cycles(synsets: Dict[str, Synset]) -> int:
    """Remove hypernym back edges found by depth-first search; returns how many"""
    state: Dict[str, int] = {}  # 1 on stack, 2 done
    dropped = 0
    for start in synsets:
        if start in state:
            continue
        stack = [(start, iter(list(synsets[start].hypernyms)))]
        state[start] = 1
        while stack:
            node, children = stack[-1]
            child = next(children, None)
            if child is None:
                state[node] = 2
                stack.pop()
            elif state.get(child) == 1:
                logger.warning(f"⚠ Hypernym cycle: dropping edge {node} -> {child}")
                synsets[node].hypernyms.remove(child)
                synsets[child].hyponyms.remove(node)
                dropped += 1
            elif child not in state:
                state[child] = 1
                stack.append((child, iter(list(synsets[child].hypernyms))))
    return dropped


def _parse(root: Path, simulate_root: bool) -> SynsetGraph:
    files = _required_files(root)

    synsets: Dict[str, Synset] = {}
    edges: List[Tuple[str, str, str, int]] = []
    for pos in POS_ORDER:
        path = files[f"data.{pos.file_suffix}"]
        for byte_offset, line in _iter_lines(path):
            try:
                offset, synset, pointers = _parse_data_line(line, pos)
            except (ValueError, StopIteration) as e:
                raise WordNetParseError(str(path), byte_offset, str(e) or "truncated line") from e
            if offset != byte_offset:
                raise WordNetParseError(str(path), byte_offset, f"synset offset {offset} does not match its position")
            synsets[synset.id] = synset
            edges.extend((synset.id, symbol, target, byte_offset) for symbol, target in pointers)
        logger.debug(f"Parsed {path}")

    for source, symbol, target, byte_offset in edges:
        if target not in synsets:
            path = files[f"data.{synsets[source].pos.file_suffix}"]
            raise WordNetParseError(str(path), byte_offset, f"pointer to unknown synset {target}")
        child, parent = (source, target) if symbol in HYPERNYM_SYMBOLS else (target, source)
        if parent not in synsets[child].hypernyms:
            synsets[child].hypernyms.append(parent)
            synsets[parent].hyponyms.append(child)

    lemma_index: Dict[Tuple[str, POS], Tuple[str, ...]] = {}
    for pos in POS_ORDER:
        path = files[f"index.{pos.file_suffix}"]
        for byte_offset, line in _iter_lines(path):
            try:
                lemma, line_pos, offsets = _parse_index_line(line)
            except (ValueError, StopIteration) as e:
                raise WordNetParseError(str(path), byte_offset, str(e) or "truncated line") from e
            ids = tuple(f"{o:08d}-{line_pos.value}" for o in offsets)
            unknown = [i for i in ids if i not in synsets]
            if unknown:
                raise WordNetParseError(str(path), byte_offset, f"lemma '{lemma}' points to unknown synset {unknown[0]}")
            lemma_index[(lemma, line_pos)] = ids

    exceptions: Dict[POS, Dict[str, List[str]]] = {}
    for pos in POS_ORDER:
        path = root / f"{pos.file_suffix}.exc"
        exceptions[pos] = {}
        if not path.is_file():
            logger.warning(f"⚠ {path} not found, morphology uses detachment rules only")
            continue
        for _, line in _iter_lines(path):
            terms = line.split()
            if len(terms) >= 2:
                exceptions[pos][terms[0]] = terms[1:]

    _drop_cycles(synsets)
    return SynsetGraph(synsets, lemma_index, exceptions, simulate_root)


def load_wordnet(
    directory: Union[str, Path],
    simulate_root: bool = True,
    cache: Optional[Union[str, Path]] = None,
) -> SynsetGraph:
    """
    Parse a WordNet 3.0 dictionary directory into a SynsetGraph.

    With cache set, the parsed graph is stored there with joblib and reused
    while it is newer than every database file.
    """
    root = Path(directory)
    if not root.is_dir():
        raise MissingInputError(f"WordNet directory not found: {root}")
    files = _required_files(root)

    if cache is not None:
        cache = Path(cache)
        newest = max(os.path.getmtime(p) for p in files.values())
        if cache.is_file() and os.path.getmtime(cache) >= newest:
            graph = joblib.load(cache)
            graph.simulate_root = simulate_root
            logger.info(f"✓ WordNet graph loaded from {cache}")
            return graph

    graph = _parse(root, simulate_root)
    logger.info(f"✓ WordNet: {len(graph)} synsets, {len(graph.lemma_index)} index entries")

    if cache is not None:
        cache.parent.mkdir(parents=True, exist_ok=True)
        joblib.dump(graph, cache)
        logger.info(f"✓ WordNet graph cached at {cache}")
    return graph
