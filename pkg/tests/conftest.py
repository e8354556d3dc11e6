"""
Shared fixtures: a hand-built WordNet dictionary, a toy corpus and the
optional published-text fixtures
"""
import os
from pathlib import Path

import pytest

from qna.wordnet import load_wordnet

LICENSE = (
    "  1 This software and database is being provided to you, the LICENSEE, by\n"
    "  2 Princeton University under the following license.\n"
)

# key, tag, lemmas, pointers (symbol, target key, target tag), tail
NOUNS = [
    ("entity", "n", ["entity"], [("~", "animal", "n"), ("~", "feeling", "n")], " | that which exists"),
    ("animal", "n", ["animal", "beast"], [("@", "entity", "n"), ("~", "dog", "n"), ("~", "cat", "n")], " | a living organism"),
    ("dog", "n", ["dog", "domestic_dog"], [("@", "animal", "n")], " | a member of the genus Canis"),
    ("cat", "n", ["cat"], [("@", "animal", "n")], " | feline mammal"),
    ("feeling", "n", ["feeling", "love"], [("@", "entity", "n"), ("~", "happiness", "n")], " | the experience of affective states"),
    ("happiness", "n", ["happiness", "felicity"], [("@", "feeling", "n")], " | state of well-being"),
]
VERBS = [
    ("love", "v", ["love"], [], " 01 + 02 00 | have a great affection for"),
]
ADJECTIVES = [
    ("sweet", "a", ["sweet"], [], " | having a sweet taste"),
    ("sugary", "s", ["sugary"], [("&", "sweet", "a")], " | containing sugar"),
]

TOY_POEMS = {
    "rose": ("Ann Rose", "The rose is red and the rose is sweet\nThe garden is full of the rose and the thorn\n"),
    "sea": ("Bea Sea", "The sea is grey and the ship is on the sea\nThe wind is cold upon the sea and the shore\n"),
    "night": ("Cy Night", "The night is dark and the star is in the night\nThe moon is pale above the night and the hill\n"),
}


def _render(entries, offsets):
    lines = []
    for key, tag, lemmas, pointers, tail in entries:
        words = " ".join(f"{lemma} 0" for lemma in lemmas)
        ptrs = "".join(f" {symbol} {offsets[target]:08d} {target_tag} 0000" for symbol, target, target_tag in pointers)
        lines.append(f"{offsets[key]:08d} 03 {tag} {len(lemmas):02x} {words} {len(pointers):03d}{ptrs}{tail}\n")
    return lines


def write_data_file(path: Path, entries) -> dict:
    """Write a data.* file with correct byte offsets; returns key -> offset"""
    draft = _render(entries, {e[0]: 0 for e in entries})
    offsets, position = {}, len(LICENSE.encode())
    for entry, line in zip(entries, draft):
        offsets[entry[0]] = position
        position += len(line.encode())
    path.write_bytes((LICENSE + "".join(_render(entries, offsets))).encode())
    return offsets


def write_index_file(path: Path, pos: str, entries) -> None:
    lines = [
        f"{lemma} {pos} {len(offs)} 0 {len(offs)} 0 {' '.join(f'{o:08d}' for o in offs)}  \n"
        for lemma, offs in sorted(entries)
    ]
    path.write_bytes((LICENSE + "".join(lines)).encode())


def build_mini_wordnet(root: Path) -> Path:
    root.mkdir(parents=True, exist_ok=True)
    nouns = write_data_file(root / "data.noun", NOUNS)
    verbs = write_data_file(root / "data.verb", VERBS)
    adjs = write_data_file(root / "data.adj", ADJECTIVES)
    (root / "data.adv").write_bytes(LICENSE.encode())

    noun_index = {}
    for key, _, lemmas, _, _ in NOUNS:
        for lemma in lemmas:
            noun_index.setdefault(lemma, []).append(nouns[key])
    write_index_file(root / "index.noun", "n", noun_index.items())
    write_index_file(root / "index.verb", "v", [("love", [verbs["love"]])])
    write_index_file(root / "index.adj", "a", [("sweet", [adjs["sweet"]]), ("sugary", [adjs["sugary"]])])
    (root / "index.adv").write_bytes(LICENSE.encode())
    (root / "verb.exc").write_text("loved love\n", encoding="utf-8")
    return root


@pytest.fixture(scope="session")
def mini_wordnet_dir(tmp_path_factory) -> Path:
    return build_mini_wordnet(tmp_path_factory.mktemp("wordnet") / "dict")


@pytest.fixture(scope="session")
def mini_graph(mini_wordnet_dir):
    return load_wordnet(mini_wordnet_dir)


@pytest.fixture
def toy_corpus(tmp_path) -> Path:
    """Three one-poem authors with no content word in common"""
    root = tmp_path / "corpus"
    root.mkdir()
    rows = ["id,author,title,year,path"]
    for doc_id, (author, poem) in TOY_POEMS.items():
        (root / f"{doc_id}.txt").write_text(poem, encoding="utf-8")
        rows.append(f"{doc_id},{author},{doc_id.title()},1900,{doc_id}.txt")
    (root / "manifest.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    return root


@pytest.fixture
def clean_env(monkeypatch):
    for name in ("WORDNET_DIR", "QNA_WORDNET_DIR", "QNA_CORPUS_DIR", "QNA_OUTPUT_DIR", "QNA_SEED",
                 "QNA_CLEANING_RULES", "QNA_AFFECT_LABELS"):
        monkeypatch.delenv(name, raising=False)


# ============== Optional external data ==============

@pytest.fixture(scope="session")
def wordnet_graph():
    """The full WordNet 3.0 graph; skipped unless WORDNET_DIR is set"""
    directory = os.environ.get("WORDNET_DIR")
    if not directory or not Path(directory).is_dir():
        pytest.skip("WORDNET_DIR not set")
    return load_wordnet(directory)


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    """Public-domain poem fixtures; skipped unless QNA_FIXTURE_DIR is set"""
    directory = os.environ.get("QNA_FIXTURE_DIR")
    if not directory or not Path(directory).is_dir():
        pytest.skip("QNA_FIXTURE_DIR not set")
    return Path(directory)


@pytest.fixture(scope="session")
def fixture_text(fixture_dir):
    def read(name: str) -> str:
        path = fixture_dir / name
        if not path.is_file():
            pytest.skip(f"{name} not in QNA_FIXTURE_DIR")
        return path.read_text(encoding="utf-8")
    return read
