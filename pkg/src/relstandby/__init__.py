"""Reliability of a k-out-of-n system of exchangeable dependent components
with one cold standby, the dependence given by a copula."""

from .copulas import FGM4, FgmPairwise, Independence, copula_cdf, copula_density, decompose_density, validate_copula
from .engine import EvalConfig, Estimate, Path, integrate_1d
from .marginals import Exponential, Lomax, Tabulated, Weibull, eval_marginal, quantile
from .mrl import mean_standby_gain, mrl_kn_given_all_alive, psi1, psi2, psi3
from .reliability import cost_rates, mttf, standby_contribution, survival_kn, survival_T, survival_T_fgm_2of3
from .simulate import Targets, sample_joint, simulate_metrics
from .system import SystemSpec, lifetime_from_draws, validate_system

__version__ = "0.1.0"

__all__ = [
    "FGM4", "FgmPairwise", "Independence", "copula_cdf", "copula_density", "decompose_density", "validate_copula",
    "EvalConfig", "Estimate", "Path", "integrate_1d",
    "Exponential", "Lomax", "Tabulated", "Weibull", "eval_marginal", "quantile",
    "mean_standby_gain", "mrl_kn_given_all_alive", "psi1", "psi2", "psi3",
    "cost_rates", "mttf", "standby_contribution", "survival_kn", "survival_T", "survival_T_fgm_2of3",
    "Targets", "sample_joint", "simulate_metrics",
    "SystemSpec", "lifetime_from_draws", "validate_system",
]
