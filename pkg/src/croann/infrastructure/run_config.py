"""Experiment configuration files (flat dotted key=value) with environment overrides."""

from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Type

from pydantic import BaseModel, Field, ValidationError, field_validator
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

from croann.domain.exceptions import ConfigurationError
from croann.domain.models import (
    CroParams,
    DatasetPreset,
    NetworkConfig,
    OperatorParams,
    StoppingConfig,
)
from croann.infrastructure.datasets.loader import CsvSchema

ENV_PREFIX = "CROANN_"
IGNORED_SECTIONS = ("manifest",)


def _parse_int_list(text: str) -> Tuple[int, ...]:
    """Parse '1,2,5' or ranges like '1-9' into column indices."""
    values: List[int] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if "-" in token.lstrip("-"):
            start, end = token.split("-", 1)
            values.extend(range(int(start), int(end) + 1))
        else:
            values.append(int(token))
    return tuple(values)


class DataSection(BaseModel):
    """Dataset file, column layout and split counts."""

    name: str = Field(default="dataset", description="Dataset name used in run directories")
    path: Path = Field(..., description="Dataset file")
    label_column: int = Field(default=-1, description="Label column index")
    attribute_columns: Optional[str] = Field(
        default=None, description="Attribute columns, e.g. '0-3' or '1,2,3' (default: all others)"
    )
    missing_marker: str = Field(default="?", description="Missing value token")
    has_header: bool = Field(default=False, description="First row holds column names")
    delimiter: str = Field(default=",", min_length=1, max_length=1, description="Field delimiter")
    split: str = Field(..., description="train,validation,test counts")
    shortfall: Literal["error", "train_first"] = Field(
        default="error", description="What to do when the split counts exceed the rows"
    )

    model_config = {"frozen": True, "extra": "forbid"}

    @field_validator("split")
    @classmethod
    def _check_split(cls, v: str) -> str:
        counts = _parse_int_list(v)
        if len(counts) != 3 or min(counts) < 1:
            raise ValueError("expected three positive counts, e.g. 75,37,38")
        return v

    @field_validator("attribute_columns")
    @classmethod
    def _check_columns(cls, v: Optional[str]) -> Optional[str]:
        if v is not None and not _parse_int_list(v):
            raise ValueError("expected column indices, e.g. 0-3 or 1,2,3")
        return v

    @property
    def counts(self) -> Tuple[int, int, int]:
        a, b, c = _parse_int_list(self.split)
        return a, b, c

    def schema(self) -> CsvSchema:
        """Column layout for the loader."""
        return CsvSchema(
            label_column=self.label_column,
            attribute_columns=_parse_int_list(self.attribute_columns) if self.attribute_columns else None,
            missing_marker=self.missing_marker,
            has_header=self.has_header,
            delimiter=self.delimiter,
        )


class NetSection(BaseModel):
    """Hidden layer size and fitness weights; n0 and n2 come from the dataset."""

    hidden: int = Field(default=5, gt=0, description="Hidden neurons")
    alpha: float = Field(default=1.0, ge=0.0, le=1.0, description="NMSE weight")
    beta: float = Field(default=0.7, ge=0.0, le=1.0, description="Error-percentage weight")

    model_config = {"frozen": True, "extra": "forbid"}


class RunSection(BaseModel):
    """Trial count, seeding and output location."""

    n_trials: int = Field(default=50, ge=1, description="Independent trials")
    base_seed: int = Field(default=0, ge=0, description="Seed of trial 0; trial i uses base_seed + i")
    out_dir: Path = Field(default=Path("runs"), description="Directory receiving run directories")

    model_config = {"frozen": True, "extra": "forbid"}


class RunConfig(BaseSettings):
    """
    Resolved experiment configuration.

    Environment variables override file values: the dotted key
    ``cro.pop_size`` is read from ``CROANN_CRO__POP_SIZE``.
    """

    model_config = SettingsConfigDict(
        env_prefix=ENV_PREFIX,
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="forbid",
        frozen=True,
    )

    data: DataSection
    cro: CroParams = Field(default_factory=CroParams)
    net: NetSection = Field(default_factory=NetSection)
    op: OperatorParams = Field(default_factory=OperatorParams)
    stop: StoppingConfig = Field(default_factory=StoppingConfig)
    run: RunSection = Field(default_factory=RunSection)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        # Environment first so it wins over file values passed as init kwargs
        return env_settings, init_settings

    def network_config(self, n0: int, n2: int) -> NetworkConfig:
        """Network dimensions for a dataset with n0 attributes and n2 classes."""
        return NetworkConfig(n0=n0, n1=self.net.hidden, n2=n2, alpha=self.net.alpha, beta=self.net.beta)

    def with_value(self, key: str, value: Any) -> "RunConfig":
        """
        Copy with one dotted key replaced; environment variables are not re-read.

        Raises:
            ConfigurationError: If the key is unknown or the value invalid
        """
        section, _, field = key.partition(".")
        current = getattr(self, section, None)
        if not isinstance(current, BaseModel) or field not in type(current).model_fields:
            raise ConfigurationError("unknown configuration key", key=key)
        try:
            updated = type(current).model_validate({**current.model_dump(), field: value})
        except ValidationError as e:
            raise ConfigurationError(_first_error(e), key=key)
        return self.model_copy(update={section: updated})

    def to_pairs(self) -> List[Tuple[str, str]]:
        """Every resolved key as (dotted key, text value), in file order."""
        pairs: List[Tuple[str, str]] = []
        for section, values in self.model_dump(mode="json").items():
            for field, value in values.items():
                if value is None:
                    continue
                if isinstance(value, bool):
                    text = "true" if value else "false"
                else:
                    text = str(value)
                pairs.append((f"{section}.{field}", text))
        return pairs


def read_key_values(path: Path) -> Dict[str, Dict[str, str]]:
    """
    Read a dotted key=value file into nested sections.

    Raises:
        ConfigurationError: On unreadable files, malformed lines or duplicate keys
    """
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise ConfigurationError(f"cannot read config file {path}: {e}")

    sections: Dict[str, Dict[str, str]] = {}
    seen: Dict[str, int] = {}
    for line_no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or "." not in key:
            raise ConfigurationError(f"line {line_no}: expected 'section.key = value'")
        if key in seen:
            raise ConfigurationError(f"line {line_no}: duplicate of line {seen[key]}", key=key)
        seen[key] = line_no
        section, _, field = key.partition(".")
        if section in IGNORED_SECTIONS:
            continue
        sections.setdefault(section, {})[field] = value.strip()
    return sections


def load_run_config(path: Path) -> RunConfig:
    """
    Load and validate an experiment configuration.

    Relative data paths resolve against the working directory.

    Raises:
        ConfigurationError: If the file or any resolved value is invalid
    """
    values = read_key_values(path)
    try:
        return RunConfig(**values)  # type: ignore[arg-type]
    except ValidationError as e:
        loc = e.errors()[0]["loc"]
        raise ConfigurationError(_first_error(e), key=".".join(str(p) for p in loc))


def _first_error(e: ValidationError) -> str:
    return str(e.errors()[0]["msg"])


def preset_config(preset: DatasetPreset, data_dir: Path) -> RunConfig:
    """Configuration for a benchmark preset, independent of the environment."""
    data = DataSection(
        name=preset.name,
        path=data_dir / preset.filename,
        label_column=preset.label_column,
        attribute_columns=",".join(str(c) for c in preset.attribute_columns),
        missing_marker=preset.missing_marker,
        split=",".join(str(c) for c in preset.split),
        shortfall=preset.shortfall,  # type: ignore[arg-type]
    )
    return RunConfig.model_construct(
        data=data,
        cro=CroParams(fe_limit=preset.fe_limit),
        net=NetSection(),
        op=OperatorParams(),
        stop=StoppingConfig(max_window_count=preset.max_window_count),
        run=RunSection(),
    )


def render_config(config: RunConfig, header: Optional[str] = None) -> str:
    """Config file text, one block per section."""
    lines: List[str] = [f"# {header}", ""] if header else []
    section = None
    for key, value in config.to_pairs():
        current = key.partition(".")[0]
        if section is not None and current != section:
            lines.append("")
        section = current
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"
