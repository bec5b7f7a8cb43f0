"""
Metrics
Regret curves, constraint audits and cross-run aggregation
"""

from .aggregate import Envelope, aggregate
from .audit import (
    AUDIT_TOLERANCE,
    audit_constraint,
    audit_mv_constraint,
    constraint_slack,
    empirical_mean_variance,
    max_mv_slack_deficit,
    max_slack_deficit,
)
from .records import DEFAULT_ACTION, RecordBuilder, RunRecord
from .regret import (
    RegretCurve,
    cumulative_mv_regret,
    default_pull_counts,
    mv_pseudo_regret,
    pseudo_regret,
    true_mean_variances,
)

__all__ = [
    "AUDIT_TOLERANCE",
    "DEFAULT_ACTION",
    "Envelope",
    "RecordBuilder",
    "RegretCurve",
    "RunRecord",
    "aggregate",
    "audit_constraint",
    "audit_mv_constraint",
    "constraint_slack",
    "cumulative_mv_regret",
    "default_pull_counts",
    "empirical_mean_variance",
    "max_mv_slack_deficit",
    "max_slack_deficit",
    "mv_pseudo_regret",
    "pseudo_regret",
    "true_mean_variances",
]
