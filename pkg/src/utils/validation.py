"""
Configuration Validation
Validation of experiment configs before any simulation starts
"""

from typing import Any, Dict, List

SCHEMA_VERSION = 1

# Algorithms each setting can run; the first entry is the conservative one.
SETTING_ALGORITHMS = {
    "cmab": ("gencb", "base", "lcb_gate"),
    "clb": ("gencb", "base"),
    "cccb": ("gencb", "base"),
    "mvcbp": ("mvcucb", "mvucb"),
}

KNOWN_FIELDS = {
    "schema_version", "name", "setting", "algorithm", "K", "d", "cardinality",
    "alpha", "mu0", "mu0_fraction", "mu_hi", "mu_lo", "rho", "lambda", "horizon",
    "runs", "master_seed", "env_seed", "unsafe_mv", "expect_violations", "checkpoints",
}


class ConfigValidationError(ValueError):
    """Raised with every validation error of a config, one per line."""

    def __init__(self, errors: List[str]):
        self.errors = list(errors)
        super().__init__("Configuration validation failed:\n" + "\n".join(f"  - {e}" for e in self.errors))


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def validate_experiment_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """Validate a raw experiment config and return validation results"""
    errors: List[str] = []
    warnings: List[str] = []

    if not isinstance(config, dict):
        return {"valid": False, "errors": ["config must be a mapping"], "warnings": []}

    version = config.get("schema_version")
    if version != SCHEMA_VERSION:
        errors.append(f"schema_version must be {SCHEMA_VERSION}, got {version!r}")

    for key in sorted(set(config) - KNOWN_FIELDS):
        warnings.append(f"Unknown field ignored: {key}")

    setting = config.get("setting")
    algorithm = config.get("algorithm")
    if setting not in SETTING_ALGORITHMS:
        errors.append(f"setting must be one of {sorted(SETTING_ALGORITHMS)}, got {setting!r}")
    elif algorithm not in SETTING_ALGORITHMS[setting]:
        errors.append(f"algorithm for setting '{setting}' must be one of "
                      f"{list(SETTING_ALGORITHMS[setting])}, got {algorithm!r}")

    run_validation = validate_run_controls(config)
    errors.extend(run_validation["errors"])
    warnings.extend(run_validation["warnings"])

    if setting in ("cmab", "mvcbp"):
        env_validation = validate_k_armed(config)
    elif setting in ("clb", "cccb"):
        env_validation = validate_linear(config)
    else:
        env_validation = {"errors": [], "warnings": []}
    errors.extend(env_validation["errors"])
    warnings.extend(env_validation["warnings"])

    if setting == "mvcbp":
        mv_validation = validate_mean_variance(config)
        errors.extend(mv_validation["errors"])
        warnings.extend(mv_validation["warnings"])

    return {
        "valid": len(errors) == 0,
        "errors": errors,
        "warnings": warnings,
    }


def validate_run_controls(config: Dict[str, Any]) -> Dict[str, Any]:
    """Validate horizon, runs, seeds and checkpoints"""
    errors = []
    warnings = []

    horizon = config.get("horizon", 100000)
    if not _is_int(horizon) or horizon < 1:
        errors.append(f"horizon must be an integer >= 1, got {horizon!r}")

    runs = config.get("runs", 50)
    if not _is_int(runs) or runs < 1:
        errors.append(f"runs must be an integer >= 1, got {runs!r}")

    for key in ("master_seed", "env_seed"):
        value = config.get(key)
        if value is not None and (not _is_int(value) or value < 0):
            errors.append(f"{key} must be a non-negative integer, got {value!r}")

    alpha = config.get("alpha")
    if alpha is not None and (not _is_number(alpha) or not 0 < alpha < 1):
        errors.append(f"alpha must lie in (0, 1), got {alpha!r}")

    lam = config.get("lambda")
    if lam is not None and (not _is_number(lam) or lam < 1):
        errors.append(f"lambda must satisfy lambda >= max(1, L^2) = 1, got {lam!r}")

    checkpoints = config.get("checkpoints", [])
    if not isinstance(checkpoints, list):
        errors.append("checkpoints must be a list of horizons")
    else:
        for point in checkpoints:
            if not _is_int(point) or point < 1 or (_is_int(horizon) and point > horizon):
                errors.append(f"checkpoint {point!r} must be an integer in [1, horizon]")

    if _is_int(runs) and runs < 50:
        warnings.append(f"runs={runs} is below the 50-run protocol")

    return {
        "errors": errors,
        "warnings": warnings,
    }


def validate_k_armed(config: Dict[str, Any]) -> Dict[str, Any]:
    """Validate the arithmetic-grid K-armed environment"""
    errors = []
    warnings = []

    k = config.get("K", 24)
    if not _is_int(k) or k < 2:
        errors.append(f"K must be an integer >= 2, got {k!r}")

    mu_hi = config.get("mu_hi", 0.8)
    mu_lo = config.get("mu_lo", 0.2)
    mu0 = config.get("mu0", 0.7)
    if not (_is_number(mu_hi) and _is_number(mu_lo) and 0 < mu_lo < mu_hi <= 1):
        errors.append(f"need 0 < mu_lo < mu_hi <= 1, got mu_lo={mu_lo!r}, mu_hi={mu_hi!r}")
    elif not _is_number(mu0) or not 0 < mu0 < mu_hi:
        errors.append(f"mu0 must satisfy 0 < mu0 < mu_hi={mu_hi} (default arm would be optimal), got {mu0!r}")

    return {
        "errors": errors,
        "warnings": warnings,
    }


def validate_linear(config: Dict[str, Any]) -> Dict[str, Any]:
    """Validate the linear and combinatorial environments"""
    errors = []
    warnings = []

    d = config.get("d", 7)
    if not _is_int(d) or d < 1:
        errors.append(f"d must be an integer >= 1, got {d!r}")
    k = config.get("K")
    if k is None and _is_int(d):
        k = 2 * d
    if not _is_int(k) or k < 2:
        errors.append(f"K must be an integer >= 2, got {k!r}")

    fraction = config.get("mu0_fraction", 0.9)
    if not _is_number(fraction) or not 0 < fraction < 1:
        errors.append(f"mu0_fraction must lie in (0, 1), got {fraction!r}")
    if "mu0" in config:
        warnings.append("mu0 is derived from mu0_fraction in the linear settings; ignoring mu0")

    if config.get("setting") == "cccb":
        card = config.get("cardinality", 3)
        if not _is_int(card) or card < 1 or (_is_int(k) and card > k):
            errors.append(f"cardinality must be an integer in [1, K], got {card!r}")

    return {
        "errors": errors,
        "warnings": warnings,
    }


def validate_mean_variance(config: Dict[str, Any]) -> Dict[str, Any]:
    """Validate rho and the alpha*rho*mu0 > 2 precondition of the MV gate"""
    errors = []
    warnings = []

    rho = config.get("rho", 60.0)
    if not _is_number(rho) or rho <= 0:
        errors.append(f"rho must be positive, got {rho!r}")
        return {"errors": errors, "warnings": warnings}

    alpha = config.get("alpha", 0.05)
    mu0 = config.get("mu0", 0.7)
    if _is_number(alpha) and _is_number(mu0) and config.get("algorithm") == "mvcucb":
        margin = alpha * rho * mu0
        if margin <= 2:
            message = f"alpha*rho*mu0 must exceed 2 for the mean-variance gate, got {margin:.6g}"
            if config.get("unsafe_mv", False):
                warnings.append(message + " (unsafe_mv set: constraint not guaranteed)")
            else:
                errors.append(message + " (set unsafe_mv to override)")

    return {
        "errors": errors,
        "warnings": warnings,
    }
