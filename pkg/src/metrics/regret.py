"""
Regret Metrics

Pseudo-regret from true means along a sample path, and the mean-variance
pseudo-regret
    (1/T) Σ_{x≠x*} N_x Δᴹⱽ_x + (2/T²) Σ_x Σ_{y≠x} N_x N_y Γ²_{x,y}
evaluated at every prefix. The default arm takes part in both sums with mean μ₀
and zero variance.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ..environments import CombEnv, Environment, KArmedEnv, optimal_value
from .records import RunRecord

_CHUNK = 8192


@dataclass(frozen=True, eq=False)
class RegretCurve:
    """Cumulative regret after each step."""
    values: NDArray[np.float64]

    @property
    def final(self) -> float:
        return float(self.values[-1]) if self.values.size else 0.0


def _step_values(record: RunRecord, env: Environment) -> NDArray[np.float64]:
    """True mean μ_{a_t} of the action played at each step."""
    means = env.means
    k = means.shape[0]
    actions = record.actions
    if record.is_combinatorial != isinstance(env, CombEnv):
        raise ValueError(f"record actions do not match the action space of {env.name}")

    regular = ~record.is_default
    picked = actions[regular]
    if picked.size and (picked.min() < 0 or picked.max() >= k):
        raise ValueError(f"action outside the arm set of {env.name}")

    values = np.full(record.horizon, float(env.default_mean))
    if record.is_combinatorial:
        values[regular] = means[picked].sum(axis=1)
    else:
        values[regular] = means[picked]
    return values


def pseudo_regret(record: RunRecord, env: Environment) -> RegretCurve:
    """curve[t] = Σ_{s≤t} (μ_{x*} − μ_{a_s})."""
    gaps = optimal_value(env) - _step_values(record, env)
    return RegretCurve(values=np.cumsum(gaps))


def default_pull_counts(record: RunRecord) -> NDArray[np.int64]:
    return record.default_counts()


def true_mean_variances(env: KArmedEnv, rho: float) -> NDArray[np.float64]:
    """MV_x = ρμ_x − μ_x(1 − μ_x) for every Bernoulli arm."""
    means = env.means
    return rho * means - means * (1.0 - means)


def mv_pseudo_regret(record: RunRecord, env: KArmedEnv, rho: float) -> NDArray[np.float64]:
    """Normalized mean-variance pseudo-regret at every prefix length 1…T.

    Arms are indexed 0…K−1 with the default arm appended as index K.
    """
    if not isinstance(env, KArmedEnv) or record.is_combinatorial:
        raise ValueError("mean-variance regret is defined for the K-armed setting")
    k = env.num_arms
    mv = np.append(true_mean_variances(env, rho), rho * env.default_mean)
    mu = np.append(env.means, env.default_mean)
    delta = mv[:k].max() - mv
    gamma_sq = (mu[:, None] - mu[None, :]) ** 2

    actions = np.where(record.is_default, k, record.actions)
    if actions.size and (actions.min() < 0 or actions.max() > k):
        raise ValueError(f"action outside the arm set of {env.name}")

    horizon = record.horizon
    values = np.empty(horizon, dtype=np.float64)
    running = np.zeros(k + 1, dtype=np.float64)
    for start in range(0, horizon, _CHUNK):
        block = actions[start:start + _CHUNK]
        n = block.shape[0]
        onehot = np.zeros((n, k + 1), dtype=np.float64)
        onehot[np.arange(n), block] = 1.0
        counts = running + np.cumsum(onehot, axis=0)
        running = counts[-1].copy()
        steps = np.arange(start + 1, start + n + 1, dtype=np.float64)
        gap_term = (counts @ delta) / steps
        risk_term = 2.0 * np.einsum("ij,jk,ik->i", counts, gamma_sq, counts) / steps ** 2
        values[start:start + n] = gap_term + risk_term
    return values


def cumulative_mv_regret(record: RunRecord, env: KArmedEnv, rho: float) -> RegretCurve:
    """T′ · R̃ᴹⱽ(T′), the cumulative form used for plotting."""
    normalized = mv_pseudo_regret(record, env, rho)
    return RegretCurve(values=normalized * np.arange(1, record.horizon + 1, dtype=np.float64))
