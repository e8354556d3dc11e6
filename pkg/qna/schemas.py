"""
Pydantic schemas for corpus records, analysis results and run parameters
"""
import json
import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from .config import data_file
from .errors import InvalidArgumentError, MissingInputError

MIN_YEAR = 1623
MAX_YEAR = 1952


def _from_json(model, path: Path):
    """Validate a JSON file against model; unreadable or invalid files raise toolkit errors"""
    try:
        with open(path, encoding="utf-8") as fp:
            return model.model_validate(json.load(fp))
    except OSError as e:
        raise MissingInputError(f"Cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InvalidArgumentError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from e
    except ValidationError as e:
        err = e.errors()[0]
        location = ".".join(str(part) for part in err["loc"]) or model.__name__
        raise InvalidArgumentError(f"{path}: {location}: {err['msg']}") from e


# ============== Corpus Schemas ==============

class RawText(BaseModel):
    """One text file of the corpus as listed in the manifest"""
    id: str = Field(..., min_length=1)
    author: str = Field(..., min_length=1)
    title: str = ""
    year: Optional[int] = Field(None, description="Publication year, when known")
    body: str = ""
    source_path: str = ""

    @field_validator("author")
    @classmethod
    def validate_author(cls, v: str) -> str:
        v = v.strip()
        if not v:
            raise ValueError("author must not be empty")
        return v

    @field_validator("year")
    @classmethod
    def validate_year(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and not MIN_YEAR <= v <= MAX_YEAR:
            raise ValueError(f"year must be in [{MIN_YEAR}, {MAX_YEAR}], got {v}")
        return v


class IngestError(BaseModel):
    """A manifest row that could not be loaded"""
    row: int
    path: str
    message: str


class IngestReport(BaseModel):
    """Result of loading a manifest: texts plus per-row errors"""
    texts: List[RawText] = []
    errors: List[IngestError] = []

    @property
    def status(self) -> str:
        if not self.errors:
            return "success"
        return "partial" if self.texts else "failed"


class NonEnglishDetector(BaseModel):
    """Stanza-level English function-word hit-rate heuristic"""
    threshold: float = Field(0.25, ge=0, le=1)
    min_tokens: int = Field(4, ge=1, description="Shorter stanzas are never judged")


class CleaningRules(BaseModel):
    """Pattern set driving clean_text; loaded from an editable JSON rule file"""
    boilerplate_start: str
    boilerplate_end: str
    header_markers: List[str] = []
    footer_markers: List[str] = []
    footnote_pattern: str
    line_number_pattern: str
    poem_separator: str
    non_english: NonEnglishDetector = NonEnglishDetector()
    duplicate_similarity_threshold: float = Field(0.9, ge=0, le=1)
    shingle_size: int = Field(5, ge=1)

    @model_validator(mode="after")
    def validate_patterns(self) -> "CleaningRules":
        patterns = [
            self.boilerplate_start, self.boilerplate_end, self.footnote_pattern,
            self.line_number_pattern, self.poem_separator,
            *self.header_markers, *self.footer_markers,
        ]
        for pattern in patterns:
            try:
                re.compile(pattern, re.MULTILINE)
            except re.error as e:
                raise ValueError(f"pattern {pattern!r} does not compile: {e}") from e
        return self

    @classmethod
    def from_file(cls, path: Path) -> "CleaningRules":
        return _from_json(cls, path)

    @classmethod
    def default(cls) -> "CleaningRules":
        return cls.from_file(data_file("cleaning_rules.json"))


class RemovedSpan(BaseModel):
    """Half-open character range [start, end) of the input removed by one rule"""
    start: int = Field(..., ge=0)
    end: int = Field(..., ge=0)
    reason: str
    excerpt: str = ""


class CleaningReport(BaseModel):
    """Everything clean_text removed from one text, in input offsets"""
    source_id: str
    input_chars: int
    output_chars: int
    passes: int = 0
    spans: List[RemovedSpan] = []

    @property
    def empty(self) -> bool:
        return self.output_chars == 0

    def reasons(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for span in self.spans:
            counts[span.reason] = counts.get(span.reason, 0) + (span.end - span.start)
        return counts


class CompoundText(BaseModel):
    """All cleaned poems of one author joined into a single text"""
    author: str = Field(..., min_length=1)
    body: str
    source_ids: List[str] = Field(..., min_length=1)
    word_count: int = Field(..., ge=0)


# ============== Profile Schemas ==============

class SurfaceStats(BaseModel):
    """Token, type and hapax counts of a text"""
    token_count: int = Field(..., ge=1)
    type_count: int = Field(..., ge=1)
    hapax_count: int = Field(..., ge=0)
    ttr: float = Field(..., gt=0, le=1)
    type_share: float = Field(..., ge=0)

    @model_validator(mode="after")
    def validate_order(self) -> "SurfaceStats":
        if not self.hapax_count <= self.type_count <= self.token_count:
            raise ValueError("expected hapax_count <= type_count <= token_count")
        return self


class PosStats(BaseModel):
    """WordNet part-of-speech counts and the most frequent words per category"""
    noun_count: int = 0
    verb_count: int = 0
    adj_count: int = 0
    av_quotient: Optional[float] = Field(None, description="None when verb_count is 0")
    top_nouns: List[Tuple[str, int]] = []
    top_verbs: List[Tuple[str, int]] = []
    top_adjs: List[Tuple[str, int]] = []


class AffectLabels(BaseModel):
    """Label words whose WordNet similarity defines valence and arousal"""
    pos: List[str]
    neg: List[str]
    aro: List[str]

    @field_validator("pos", "neg", "aro")
    @classmethod
    def validate_lowercase(cls, v: List[str]) -> List[str]:
        if any(not word or word != word.lower() for word in v):
            raise ValueError("label words must be non-empty and lowercase")
        return v

    @model_validator(mode="after")
    def validate_lengths(self) -> "AffectLabels":
        if (len(self.pos), len(self.neg), len(self.aro)) != (7, 5, 14):
            raise ValueError("expected 7 positive, 5 negative and 14 arousal labels")
        return self

    @classmethod
    def from_file(cls, path: Path) -> "AffectLabels":
        return _from_json(cls, path)

    @classmethod
    def default(cls) -> "AffectLabels":
        return cls.from_file(data_file("affect_labels.json"))


class AffectStats(BaseModel):
    """Text-level affect means over words found in WordNet"""
    pos_valence_mean: float
    neg_valence_mean: float
    arousal_mean: float
    hit_rate: float = Field(..., ge=0, le=1)
    most_positive: str
    most_negative: str
    most_arousing: str


class TextProfile(BaseModel):
    """One row of the two-poem comparison table"""
    text_id: str
    surface: SurfaceStats
    pos: Optional[PosStats] = None
    collocations: Dict[str, List[Tuple[str, int]]] = {}
    sonority_mean: Optional[float] = None
    affect: Optional[AffectStats] = None


# ============== Distinctiveness Schemas ==============

class KeynessResult(BaseModel):
    """Distinctiveness of one stem in an a-versus-b comparison"""
    word: str
    rate_a: float = Field(..., ge=0)
    rate_b: float = Field(..., ge=0)
    corpus_avg_rate: Optional[float] = Field(None, ge=0)
    unique_to: Optional[str] = None
    keyness: Optional[float] = None
    p_delta_neg: Optional[float] = Field(None, ge=0, le=1)


# ============== Gibbs Sampler Schemas ==============

class GibbsPriors(BaseModel):
    """Conjugate priors of the two-group normal model"""
    mu0: float
    tau0_sq: float = Field(..., gt=0)
    delta0: float = 0.0
    gamma0_sq: float = Field(..., gt=0)
    nu0: float = Field(1.0, gt=0)
    sigma0_sq: float = Field(..., gt=0)


class GibbsConfig(BaseModel):
    """Sampler settings; priors default to weakly informative, data-scaled values"""
    n_samples: int = Field(2000, gt=0)
    burn_in: int = Field(500, ge=0)
    seed: int = 0
    priors: Optional[GibbsPriors] = None


class PosteriorSamples(BaseModel):
    """Posterior draws of delta, half the difference of the group means"""
    delta_draws: List[float]
    p_delta_neg: float = Field(..., ge=0, le=1)

    @property
    def delta_mean(self) -> float:
        return sum(self.delta_draws) / len(self.delta_draws)
