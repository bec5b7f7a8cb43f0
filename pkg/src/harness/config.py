"""
Experiment Configuration
Typed experiment configs built from validated JSON documents
"""

import logging
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..utils.config import ConfigLoader
from ..utils.validation import (
    SCHEMA_VERSION,
    SETTING_ALGORITHMS,
    ConfigValidationError,
    validate_experiment_config,
)

logger = logging.getLogger(__name__)

DEFAULT_HORIZON = 100_000
DEFAULT_RUNS = 50

# Algorithms that run the base policy with no constraint; audits on them are negative controls.
UNCONSTRAINED_ALGORITHMS = frozenset({"base", "mvucb"})

_DEFAULT_ALPHA = {"cmab": 0.05, "mvcbp": 0.05, "clb": 0.01, "cccb": 0.01}


@dataclass(frozen=True)
class ExperimentConfig:
    setting: str
    algorithm: str
    name: str = ""
    K: Optional[int] = None
    d: int = 7
    cardinality: int = 3
    alpha: Optional[float] = None
    mu0: float = 0.7
    mu0_fraction: float = 0.9
    mu_hi: float = 0.8
    mu_lo: float = 0.2
    rho: float = 60.0
    lam: float = 1.0
    horizon: int = DEFAULT_HORIZON
    runs: int = DEFAULT_RUNS
    master_seed: int = 0
    env_seed: Optional[int] = None
    unsafe_mv: bool = False
    expect_violations: bool = False
    checkpoints: List[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.name:
            object.__setattr__(self, "name", f"{self.setting}_{self.algorithm}")
        if self.alpha is None:
            object.__setattr__(self, "alpha", _DEFAULT_ALPHA.get(self.setting, 0.05))
        if self.K is None:
            object.__setattr__(self, "K", 2 * self.d if self.setting in ("clb", "cccb") else 24)
        if self.env_seed is None:
            object.__setattr__(self, "env_seed", self.master_seed)
        object.__setattr__(self, "checkpoints", sorted(set(self.checkpoints)))

    @property
    def is_linear(self) -> bool:
        return self.setting in ("clb", "cccb")

    @property
    def is_mean_variance(self) -> bool:
        return self.setting == "mvcbp"

    @property
    def is_unconstrained(self) -> bool:
        return self.algorithm in UNCONSTRAINED_ALGORITHMS

    @classmethod
    def from_dict(cls, raw: Dict[str, Any]) -> "ExperimentConfig":
        """Validate ``raw`` and build a config; every validation error is reported at once."""
        result = validate_experiment_config(raw)
        for warning in result["warnings"]:
            logger.warning(warning)
        if not result["valid"]:
            raise ConfigValidationError(result["errors"])

        known = {k: v for k, v in raw.items() if k in _FIELD_NAMES}
        known.pop("schema_version", None)
        if "lambda" in known:
            known["lam"] = float(known.pop("lambda"))
        return cls(**known)

    def to_dict(self) -> Dict[str, Any]:
        """Fully resolved config, in the JSON field names; ``from_dict(to_dict())`` round-trips."""
        data = asdict(self)
        data["lambda"] = data.pop("lam")
        data["schema_version"] = SCHEMA_VERSION
        if self.is_linear:
            data.pop("mu0")
            data.pop("mu_hi")
            data.pop("mu_lo")
        else:
            data.pop("mu0_fraction")
            data.pop("d")
        if self.setting != "cccb":
            data.pop("cardinality")
        if not self.is_mean_variance:
            data.pop("rho")
            data.pop("unsafe_mv")
        return dict(sorted(data.items()))

    def with_overrides(self, runs: Optional[int] = None, horizon: Optional[int] = None,
                       master_seed: Optional[int] = None) -> "ExperimentConfig":
        """Apply command-line overrides and re-validate.

        Overriding the master seed leaves an explicitly configured ``env_seed`` alone.
        """
        raw = self.to_dict()
        if runs is not None:
            raw["runs"] = runs
        if horizon is not None:
            raw["horizon"] = horizon
            raw["checkpoints"] = [c for c in raw["checkpoints"] if c <= horizon]
        if master_seed is not None:
            if raw["env_seed"] == raw["master_seed"]:
                raw["env_seed"] = master_seed
            raw["master_seed"] = master_seed
        return ExperimentConfig.from_dict(raw)

    def environment_key(self) -> tuple:
        """Fields that pin down the environment and the replication protocol."""
        data = self.to_dict()
        for key in ("name", "algorithm", "alpha", "master_seed", "expect_violations",
                    "checkpoints", "unsafe_mv", "lambda", "schema_version"):
            data.pop(key, None)
        return tuple(sorted(data.items()))


_FIELD_NAMES = set(ExperimentConfig.__dataclass_fields__) | {"lambda", "schema_version"}
_FIELD_NAMES.discard("lam")


def load_experiment_config(path: Union[str, Path]) -> ExperimentConfig:
    """Load a JSON (or YAML) experiment config from disk."""
    raw = ConfigLoader().load_config(str(path))
    return ExperimentConfig.from_dict(raw)

