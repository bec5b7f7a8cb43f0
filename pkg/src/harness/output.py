"""
Experiment Output
CSV and JSON writers with fixed numeric formatting, and the trace reader
"""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from ..metrics import DEFAULT_ACTION, Envelope, RunRecord

logger = logging.getLogger(__name__)

NUMBER_FORMAT = "%.10g"
DEFAULT_TOKEN = "default"

PathLike = Union[str, Path]


def format_number(value: Any) -> str:
    """``%.10g`` for reals, plain decimal for integers, empty for missing values."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return NUMBER_FORMAT % float(value)


def write_csv(path: PathLike, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """UTF-8 CSV with LF line endings."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([v if isinstance(v, str) else format_number(v) for v in row])
    return path


def write_envelope_csv(path: PathLike, envelope: Envelope) -> Path:
    rows = (
        (t, envelope.mean[t - 1], envelope.max[t - 1], envelope.min[t - 1])
        for t in range(1, envelope.horizon + 1)
    )
    return write_csv(path, ("t", "mean", "max", "min"), rows)


def write_runs_csv(path: PathLike, runs: Sequence[Any], checkpoints: Sequence[int]) -> Path:
    """One row per run; ``runs`` items carry the ``RunSummary`` attributes."""
    header = ["run", "final_regret", "N0_final", "first_violation"]
    header += [f"N0_at_{c}" for c in checkpoints]
    rows = []
    for run in runs:
        row = [run.run_index, run.final_regret, run.n0_final, run.first_violation]
        row += [run.n0_at[c] for c in checkpoints]
        rows.append(row)
    return write_csv(path, header, rows)


def write_json(path: PathLike, payload: Dict[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def _format_action(record: RunRecord, index: int) -> str:
    if record.is_default[index]:
        return DEFAULT_TOKEN
    if record.is_combinatorial:
        return ";".join(str(int(a)) for a in record.actions[index])
    return str(int(record.actions[index]))


def write_trace(path: PathLike, record: RunRecord) -> Path:
    """Per-step trace ``t,action,reward,is_default`` with 1-based t."""
    rows = (
        (str(i + 1), _format_action(record, i), record.rewards[i], bool(record.is_default[i]))
        for i in range(record.horizon)
    )
    return write_csv(path, ("t", "action", "reward", "is_default"), rows)


def load_trace(path: PathLike, cardinality: Optional[int] = None) -> RunRecord:
    """Read a trace written by :func:`write_trace` back into a ``RunRecord``."""
    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        missing = {"t", "action", "reward", "is_default"} - set(reader.fieldnames or [])
        if missing:
            raise ValueError(f"{path}: trace is missing columns {sorted(missing)}")
        raw_actions: List[Optional[List[int]]] = []
        rewards: List[float] = []
        is_default: List[bool] = []
        for line, row in enumerate(reader, start=2):
            if int(row["t"]) != len(rewards) + 1:
                raise ValueError(f"{path}:{line}: expected t={len(rewards) + 1}, got {row['t']}")
            default = row["is_default"].strip() in ("1", "true", "True")
            token = row["action"].strip()
            if default != (token == DEFAULT_TOKEN):
                raise ValueError(f"{path}:{line}: action {token!r} disagrees with is_default")
            raw_actions.append(None if default else [int(a) for a in token.split(";")])
            rewards.append(float(row["reward"]))
            is_default.append(default)

    widths = {len(a) for a in raw_actions if a is not None}
    if cardinality is None:
        if len(widths) > 1:
            raise ValueError(f"{path}: super arms of different sizes in one trace")
        cardinality = widths.pop() if widths else 1
    combinatorial = cardinality > 1

    if combinatorial:
        actions = np.full((len(rewards), cardinality), DEFAULT_ACTION, dtype=np.int64)
    else:
        actions = np.full(len(rewards), DEFAULT_ACTION, dtype=np.int64)
    for i, action in enumerate(raw_actions):
        if action is None:
            continue
        if combinatorial:
            if len(action) != cardinality:
                raise ValueError(f"{path}: step {i + 1} plays {len(action)} base arms, expected {cardinality}")
            actions[i] = action
        else:
            actions[i] = action[0]

    logger.debug("Loaded trace %s with %d steps", path, len(rewards))
    return RunRecord(actions=actions, rewards=np.array(rewards), is_default=np.array(is_default, dtype=bool))
