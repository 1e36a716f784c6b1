"""Survival functions, mean time to failure and cost rates."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .copulas import FGM4, Independence, diagonal_blocks_cdf
from .engine import (
    EvalConfig,
    Estimate,
    Path,
    beta_constant,
    factored_integral_standby,
    integrate_1d,
    mc_integral_standby,
)
from .errors import DomainError, QuadratureError, UnsupportedOperationError
from .system import SystemSpec

__all__ = [
    "CostRates",
    "survival_kn",
    "standby_contribution",
    "survival_T",
    "survival_T_independent",
    "survival_T_fgm_2of3",
    "mttf",
    "cost_rates",
    "truncation_point",
]


def _kn_survival_values(spec: SystemSpec, s):
    """Vectorised k-out-of-n survival from the copula diagonal."""
    n, k = spec.n, spec.k
    Fs = np.asarray(spec.component.cdf(s), dtype=float)
    total = np.ones_like(Fs)
    for i in range(n - k + 1, n + 1):
        sign = (-1) ** (i - n + k - 1)
        total = total - sign * comb(n, i) * comb(i - 1, n - k) * diagonal_blocks_cdf(spec.copula, [(Fs, i)])
    return total


def survival_kn(spec: SystemSpec, s: float) -> Estimate:
    """``P(Z_{n-k+1:n} > s)`` of the bare system (no standby)."""
    if s < 0:
        raise DomainError("s must be nonnegative")
    v = float(_kn_survival_values(spec, s))
    return Estimate(v, 8 * np.finfo(float).eps * comb(spec.n, spec.n // 2) ** 2, Path.CLOSED_FORM)


def standby_contribution(spec: SystemSpec, s: float, cfg: EvalConfig | None = None, path: str = "auto") -> Estimate:
    """Survival added by the standby: ``P(Z_{n-k+1:n} <= s < T)``.

    ``path`` is ``"auto"`` (factored when the copula decomposes, else Monte
    Carlo), ``"factored"`` or ``"montecarlo"``.
    """
    cfg = cfg or EvalConfig()
    path = path.lower()
    if path not in ("auto", "factored", "montecarlo"):
        raise DomainError(f"unknown path {path!r}")
    if s < 0:
        raise DomainError("s must be nonnegative")
    if path == "montecarlo":
        return mc_integral_standby(spec, s, cfg)
    try:
        return factored_integral_standby(spec, s, cfg)
    except UnsupportedOperationError:
        if path == "factored":
            raise
        return mc_integral_standby(spec, s, cfg)


def survival_T(spec: SystemSpec, s: float, cfg: EvalConfig | None = None, path: str = "auto") -> Estimate:
    """``P(T > s)``; the raw value is kept, use ``Estimate.clamped`` for display."""
    bare = survival_kn(spec, s)
    extra = standby_contribution(spec, s, cfg, path)
    return Estimate(bare.value + extra.value, bare.error_bound + extra.error_bound, extra.path)


def survival_T_independent(spec: SystemSpec, s: float, cfg: EvalConfig | None = None) -> Estimate:
    """Survival of T for fully independent lifetimes, ignoring ``spec.copula``.

    Uses the single-integral reduction
    ``F_bar(s)**(k-1) / B(n-k+1, k) * int_0^s G_bar(s-z) F(z)**(n-k) f(z) dz``
    for the standby term.
    """
    cfg = cfg or EvalConfig()
    n, k = spec.n, spec.k
    F, G = spec.component, spec.standby
    Fs = F.cdf(s)
    bare = 1.0 - sum((-1) ** (i - n + k - 1) * comb(n, i) * comb(i - 1, n - k) * Fs**i for i in range(n - k + 1, n + 1))
    if s == 0:
        return Estimate(bare, 0.0, Path.QUADRATURE)
    est = integrate_1d(lambda z: G.sf(np.maximum(s - z, 0.0)) * F.cdf(z) ** (n - k) * F.pdf(z), 0.0, s, cfg)
    c = beta_constant(n, k) * (1.0 - Fs) ** (k - 1)
    return Estimate(bare + c * est.value, c * est.error_bound, Path.QUADRATURE)


def survival_T_fgm_2of3(spec: SystemSpec, s: float, cfg: EvalConfig | None = None) -> Estimate:
    """Hand-reduced survival of T for a 2-out-of-3 system with the FGM4 copula.

    An independent transcription of the closed form, kept as an oracle for the
    generic factored path.
    """
    cfg = cfg or EvalConfig()
    if not (spec.n == 3 and spec.k == 2 and isinstance(spec.copula, (FGM4, Independence))):
        raise UnsupportedOperationError("closed form exists only for n=3, k=2 with the FGM4 copula")
    if isinstance(spec.copula, Independence):
        t11 = t12 = t21 = t22 = t31 = 0.0
    else:
        t11, t12, t21, t22, t31 = spec.copula.thetas
    F, G = spec.component, spec.standby
    Fs = F.cdf(s)
    Fbs = 1.0 - Fs
    bare = 1 - 3 * Fs**2 + 2 * Fs**3 - 3 * t11 * Fs**2 * Fbs**2 * (1 - 2 * Fs) + 2 * t21 * Fs**3 * Fbs**3
    if s == 0:
        return Estimate(bare, 0.0, Path.QUADRATURE)

    def integrand(z):
        Fz = F.cdf(z)
        Fbz = 1.0 - Fz
        Gw = G.cdf(np.maximum(s - z, 0.0))
        bracket = (
            1
            - (t11 - t22 * Gw) * (Fs * Fbz + (Fs - Fbz) * (1 - 2 * Fz))
            + t12 * (Fs - 2 + 3 * Fz) * Gw
            - (t21 - t31 * Gw) * (1 - 2 * Fz) * Fs * Fbz
        )
        return bracket * Fz * (1.0 - Gw) * F.pdf(z)

    est = integrate_1d(integrand, 0.0, s, cfg)
    return Estimate(bare + 6 * Fbs * est.value, 6 * Fbs * est.error_bound, Path.QUADRATURE)


def truncation_point(spec: SystemSpec, cfg: EvalConfig) -> float:
    """Upper limit for lifetime integrals: tail quantile of F plus that of G."""
    q = 1.0 - cfg.tail_cut
    return float(spec.component.quantile(q) + spec.standby.quantile(q))


def integrate_survival(spec, surv, a, cfg) -> Estimate:
    """``int_a^L surv(s) ds`` with the tail beyond L checked and bounded.

    ``surv`` maps an array of times to survival values.  The tail is bounded
    by ``L * surv(L)``; a tail that is not negligible means the mean is
    infinite or too heavy-tailed for the configured cut, and raises.
    """
    L = truncation_point(spec, cfg)
    if L <= a:
        return Estimate(0.0, 0.0, Path.QUADRATURE)
    # geometric knots keep a long heavy-tail range from swamping the bulk
    knots = [a] + [a + (L - a) * 10.0**-j for j in range(6, 0, -1)] + [L]
    value = err = 0.0
    for lo, hi in zip(knots[:-1], knots[1:]):
        part = integrate_1d(surv, lo, hi, cfg)
        value += part.value
        err += part.error_bound
    est = Estimate(value, err, Path.QUADRATURE)
    tail = L * abs(float(np.asarray(surv(np.array([L])))[0]))
    if tail > 1e-6 * max(1.0, abs(est.value)):
        raise QuadratureError("lifetime integral does not settle under the tail cut (infinite or very heavy-tailed mean)", est.value, est.error_bound + tail)
    return Estimate(est.value, est.error_bound + tail, Path.QUADRATURE)


def _survival_T_values(spec, cfg):
    def f(s):
        s = np.atleast_1d(s)
        extra = np.array([standby_contribution(spec, si, cfg).value for si in s])
        return _kn_survival_values(spec, s) + extra
    return f


def mttf(spec: SystemSpec, cfg: EvalConfig | None = None, which: str = "standby") -> Estimate:
    """Mean time to failure of the bare system (``"bare"``) or of T (``"standby"``)."""
    cfg = cfg or EvalConfig()
    which = which.lower()
    if which == "bare":
        return integrate_survival(spec, lambda s: _kn_survival_values(spec, s), 0.0, cfg)
    if which == "standby":
        return integrate_survival(spec, _survival_T_values(spec, cfg), 0.0, cfg)
    raise DomainError(f"which must be 'bare' or 'standby', got {which!r}")


@dataclass(frozen=True)
class CostRates:
    unit_cost: float
    n: int
    mttf_bare: Estimate
    mttf_standby: Estimate

    @property
    def cost_rate_bare(self) -> float:
        return self.n * self.unit_cost / self.mttf_bare.value

    @property
    def cost_rate_standby(self) -> float:
        return (self.n + 1) * self.unit_cost / self.mttf_standby.value

    def to_dict(self):
        return {
            "unit_cost": self.unit_cost,
            "mttf_bare": self.mttf_bare.value,
            "mttf_bare_error": self.mttf_bare.error_bound,
            "mttf_standby": self.mttf_standby.value,
            "mttf_standby_error": self.mttf_standby.error_bound,
            "cost_rate_bare": self.cost_rate_bare,
            "cost_rate_standby": self.cost_rate_standby,
        }


def cost_rates(spec: SystemSpec, unit_cost: float = 1.0, cfg: EvalConfig | None = None) -> CostRates:
    """Acquisition cost of all components per unit of expected lifetime."""
    if not unit_cost > 0:
        raise DomainError("unit cost must be positive")
    return CostRates(float(unit_cost), spec.n, mttf(spec, cfg, "bare"), mttf(spec, cfg, "standby"))
