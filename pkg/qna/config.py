"""
Run settings for every subcommand: paths, seed, matrix, topic, sampler and
language-model parameters, layered from defaults, QNA_ environment
variables, a key=value file and command-line flags
"""
from pathlib import Path
from typing import Any, Dict, Iterable, Literal, Optional

from dotenv import dotenv_values
from pydantic import AliasChoices, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .errors import InvalidArgumentError, MissingInputError

DATA_DIR = Path(__file__).parent / "data"


class RunConfig(BaseSettings):
    """Run settings with environment variable and config-file support"""

    # Paths
    corpus_dir: Optional[Path] = None
    manifest_name: str = "manifest.csv"
    wordnet_dir: Optional[Path] = Field(
        None, validation_alias=AliasChoices("wordnet_dir", "QNA_WORDNET_DIR", "WORDNET_DIR")
    )
    wordnet_cache: Optional[Path] = None
    cleaning_rules: Optional[Path] = Field(None, description="JSON rule file replacing the bundled cleaning rules")
    affect_labels: Optional[Path] = Field(None, description="JSON label file replacing the bundled affect labels")
    output_dir: Path = Path("./out")

    # Reproducibility / execution
    seed: int = 0
    n_jobs: int = 1

    # Document-term matrix
    min_count: int = Field(1, ge=1)
    max_doc_fraction: float = 0.95
    rate_denominator: Literal["post_stopword", "pre_stopword"] = "post_stopword"

    # Similarity and topics
    lsa_components: int = Field(40, ge=1)
    mds_dims: int = Field(2, ge=1)
    nmf_topics: int = Field(20, ge=1)
    nmf_max_iters: int = Field(500, ge=1)
    nmf_tol: float = Field(1e-6, ge=0)
    top_terms: int = Field(20, ge=1)

    # Bayesian distinctiveness
    gibbs_samples: int = Field(2000, ge=1)
    gibbs_burn_in: int = Field(500, ge=0)
    segment_len: int = Field(1000, ge=1)

    # Language model
    lm_k: float = 0.5
    lm_unk_singletons: bool = False

    # Lexical profile
    simulate_root: bool = True
    corpus_type_total: int = Field(41857, ge=1)
    collocation_top: int = Field(6, ge=0)
    top_words: int = Field(3, ge=0)

    # Logging
    log_level: str = "INFO"

    model_config = SettingsConfigDict(
        env_prefix="QNA_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
        populate_by_name=True,
    )

    @field_validator("max_doc_fraction")
    @classmethod
    def validate_max_doc_fraction(cls, v: float) -> float:
        if not 0 < v <= 1:
            raise ValueError("max_doc_fraction must be in (0, 1]")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        v = v.upper()
        if v not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown log level {v}")
        return v

    @field_validator("lm_k")
    @classmethod
    def validate_lm_k(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("lm_k must be > 0")
        return v

    @property
    def manifest_path(self) -> Optional[Path]:
        if self.corpus_dir is None:
            return None
        return self.corpus_dir / self.manifest_name

    def require_paths(self, *names: str) -> None:
        """
        Check that the named path settings are set and exist.

        Raises MissingInputError naming the first offending setting.
        """
        for name in names:
            value = getattr(self, name)
            if value is None:
                raise MissingInputError(f"--{name.replace('_dir', '').replace('_', '-')} is required")
            if not Path(value).exists():
                raise MissingInputError(f"{name} does not exist: {value}")

    @classmethod
    def describe(cls) -> str:
        """One line per setting with its default, for --help output"""
        lines = []
        for name, field in cls.model_fields.items():
            lines.append(f"  {name} = {field.default!r}")
        return "\n".join(lines)


def load_config(config_file: Optional[Path] = None, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """
    Build a RunConfig: defaults < environment/.env < key=value config file < overrides.

    Keys in the config file are matched case-insensitively against field names;
    unknown keys are ignored like unknown environment variables.
    """
    merged: Dict[str, Any] = {}
    if config_file is not None:
        if not Path(config_file).is_file():
            raise MissingInputError(f"Config file not found: {config_file}")
        for key, value in dotenv_values(config_file).items():
            name = key.strip().lower().removeprefix("qna_")
            if name in RunConfig.model_fields and value is not None:
                merged[name] = value
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value
    try:
        return RunConfig(**merged)
    except ValidationError as e:
        err = e.errors()[0]
        location = ".".join(str(part) for part in err["loc"])
        raise InvalidArgumentError(f"{location}: {err['msg']}") from e


def data_file(name: str) -> Path:
    """Path of a bundled data file"""
    return DATA_DIR / name


def iter_data_lines(path: Path) -> Iterable[str]:
    """Non-empty, non-comment lines of a bundled one-entry-per-line file"""
    with open(path, encoding="utf-8") as fp:
        for line in fp:
            line = line.strip()
            if line and not line.startswith("#"):
                yield line


# Singleton instance
settings = RunConfig()
