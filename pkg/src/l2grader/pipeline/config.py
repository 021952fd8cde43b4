"""Pipeline configuration: a single JSON or TOML file plus overrides."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from ..corpus.types import Language
from ..errors import ConfigInvalid
from ..features.lexicons import LANGUAGE_NAMES

DEFAULT_SPLIT_FRACTION = 2.0 / 3.0
DEFAULT_SEED = 7
DEFAULT_LM_ORDERS = (1, 2, 3, 4)


@dataclass
class NnConfig:
    epochs: int = 200
    batch_size: int = 32
    learning_rate: float = 0.05
    seed: int = DEFAULT_SEED


@dataclass
class PipelineConfig:
    utterances: Path
    out_of_domain: dict
    lexicons: dict
    reference_lexicon: Path
    output_dir: Path
    alignments: Path | None = None
    corrections: Path | None = None
    stopwords: dict = field(default_factory=dict)
    split_fraction: float = DEFAULT_SPLIT_FRACTION
    seed: int = DEFAULT_SEED
    lm_orders: tuple = DEFAULT_LM_ORDERS
    bow_k: int = 50
    count_hesitations: bool = True
    oov_free_diff_minus_one: bool = False
    nn: NnConfig = field(default_factory=NnConfig)

    def validate(self) -> None:
        problems = []
        if not 0.0 < self.split_fraction < 1.0:
            problems.append(f"split_fraction must be in (0,1), got {self.split_fraction}")
        if len(self.lm_orders) != len(DEFAULT_LM_ORDERS):
            problems.append(
                f"lm_orders must list exactly {len(DEFAULT_LM_ORDERS)} orders "
                f"(the feature layout is fixed), got {list(self.lm_orders)}"
            )
        if any(not 1 <= order <= 4 for order in self.lm_orders):
            problems.append(f"lm_orders must lie in [1,4], got {list(self.lm_orders)}")
        if self.bow_k < 1:
            problems.append(f"bow_k must be positive, got {self.bow_k}")
        if self.nn.epochs < 1 or self.nn.batch_size < 1:
            problems.append("nn.epochs and nn.batch_size must be positive")
        if self.nn.learning_rate <= 0:
            problems.append(f"nn.learning_rate must be positive, got {self.nn.learning_rate}")
        for label, path in self._input_files():
            if path is not None and not Path(path).is_file():
                problems.append(f"{label}: file not found: {path}")
        for name in self.out_of_domain:
            if name not in {language.value for language in Language}:
                problems.append(f"unknown out_of_domain language {name!r}")
        if not self.out_of_domain:
            problems.append("out_of_domain text configured for no language")
        for name in self.lexicons:
            if name not in LANGUAGE_NAMES:
                problems.append(f"unknown lexicon language {name!r}")
        if problems:
            raise ConfigInvalid("; ".join(problems))

    def _input_files(self):
        pairs = [("utterances", self.utterances), ("reference_lexicon", self.reference_lexicon)]
        if self.alignments is not None:
            pairs.append(("alignments", self.alignments))
        if self.corrections is not None:
            pairs.append(("corrections", self.corrections))
        pairs.extend((f"out_of_domain[{k}]", v) for k, v in sorted(self.out_of_domain.items()))
        pairs.extend((f"lexicons[{k}]", v) for k, v in sorted(self.lexicons.items()))
        pairs.extend((f"stopwords[{k}]", v) for k, v in sorted(self.stopwords.items()))
        return pairs

    def input_paths(self) -> list:
        return [Path(p) for _, p in self._input_files() if p is not None]

    def digest(self) -> str:
        """Stable hash of the configuration content."""
        payload = {
            "utterances": str(self.utterances),
            "alignments": str(self.alignments) if self.alignments else None,
            "out_of_domain": {k: str(v) for k, v in sorted(self.out_of_domain.items())},
            "lexicons": {k: str(v) for k, v in sorted(self.lexicons.items())},
            "stopwords": {k: str(v) for k, v in sorted(self.stopwords.items())},
            "reference_lexicon": str(self.reference_lexicon),
            "corrections": str(self.corrections) if self.corrections else None,
            "split_fraction": self.split_fraction,
            "seed": self.seed,
            "lm_orders": list(self.lm_orders),
            "bow_k": self.bow_k,
            "count_hesitations": self.count_hesitations,
            "oov_free_diff_minus_one": self.oov_free_diff_minus_one,
            "nn": vars(self.nn),
            "output_dir": str(self.output_dir),
        }
        canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def load_config(path, overrides: dict | None = None) -> PipelineConfig:
    """Read a JSON (.json) or TOML (.toml) config file.

    Relative paths inside the file resolve against the file's directory.
    ``overrides`` replace top-level fields before validation.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigInvalid(f"config file not found: {path}")
    if path.suffix == ".toml":
        with open(path, "rb") as handle:
            raw = tomllib.load(handle)
    else:
        with open(path, "r", encoding="utf-8") as handle:
            try:
                raw = json.load(handle)
            except json.JSONDecodeError as exc:
                raise ConfigInvalid(f"{path}: invalid JSON: {exc}") from exc
    if overrides:
        raw.update({k: v for k, v in overrides.items() if v is not None})
    base = path.parent

    def _path(value):
        return None if value is None else (base / value).resolve()

    def _path_map(value):
        return {k: _path(v) for k, v in (value or {}).items()}

    try:
        config = PipelineConfig(
            utterances=_path(raw["utterances"]),
            alignments=_path(raw.get("alignments")),
            out_of_domain=_path_map(raw.get("out_of_domain")),
            lexicons=_path_map(raw.get("lexicons")),
            stopwords=_path_map(raw.get("stopwords")),
            reference_lexicon=_path(raw["reference_lexicon"]),
            corrections=_path(raw.get("corrections")),
            split_fraction=float(raw.get("split_fraction", DEFAULT_SPLIT_FRACTION)),
            seed=int(raw.get("seed", DEFAULT_SEED)),
            lm_orders=tuple(raw.get("lm_orders", DEFAULT_LM_ORDERS)),
            bow_k=int(raw.get("bow_k", 50)),
            count_hesitations=bool(raw.get("count_hesitations", True)),
            oov_free_diff_minus_one=bool(raw.get("oov_free_diff_minus_one", False)),
            nn=NnConfig(**raw.get("nn", {})),
            output_dir=_path(raw["output_dir"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigInvalid(f"{path}: {exc!r}") from exc
    config.validate()
    return config
