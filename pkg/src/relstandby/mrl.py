"""Mean residual life of the standby-augmented system.

Three conditioning events are supported:

* ``psi1(t) = E(T - t | T > t)``
* ``psi2(t) = E(T - t | Z_{n-k+1:n} > t)`` (principal system still working)
* ``psi3(t) = E(T - t | Z_{1:n} > t)`` (no component failed yet)

The ``*_independent`` functions are closed forms for independent lifetimes
that ignore the copula; they serve as oracles for the general code.
"""

from __future__ import annotations

from math import comb

import numpy as np

from .copulas import all_components_survive, diagonal_blocks_cdf
from .engine import (
    EvalConfig,
    Estimate,
    Path,
    beta_constant,
    factored_gap_integral,
    factored_integral_standby,
    integrate_1d,
)
from .errors import ConditioningError, DomainError
from .reliability import _kn_survival_values, _survival_T_values, integrate_survival, survival_kn, survival_T, truncation_point
from .system import SystemSpec

__all__ = [
    "psi1",
    "psi2",
    "psi3",
    "mean_standby_gain",
    "mrl_kn_given_all_alive",
    "prob_all_alive",
    "mrl_kn_independent",
    "psi2_independent",
    "psi3_independent",
    "MIN_CONDITIONING_PROB",
]

MIN_CONDITIONING_PROB = 1e-8


def _check_t(t):
    if not t >= 0:
        raise DomainError("t must be nonnegative")


def _denominator(p: float, cfg: EvalConfig, what: str):
    if p < max(MIN_CONDITIONING_PROB, cfg.quad_abs_tol):
        raise ConditioningError(f"P({what}) = {p:.3g} is too small to condition on")
    return p


def _ratio(num: Estimate, den_value: float, den_err: float, path: Path) -> Estimate:
    r = num.value / den_value
    return Estimate(r, (num.error_bound + abs(r) * den_err) / den_value, path)


def psi1(spec: SystemSpec, t: float, cfg: EvalConfig | None = None) -> Estimate:
    """``E(T - t | T > t)`` as integrated survival over survival at ``t``."""
    cfg = cfg or EvalConfig()
    _check_t(t)
    den = survival_T(spec, t, cfg)
    _denominator(den.value, cfg, "T > t")
    num = integrate_survival(spec, _survival_T_values(spec, cfg), t, cfg)
    return _ratio(num, den.value, den.error_bound, Path.QUADRATURE)


def _window_integral(spec, t, cfg):
    """``int_0^inf P(T > t + x, t < Z_{n-k+1:n} <= t + x) dx``."""
    def f(x):
        return np.array([factored_integral_standby(spec, t + xi, cfg, lower=t).value for xi in np.atleast_1d(x)])
    return integrate_survival(spec, f, 0.0, cfg)


def psi2(spec: SystemSpec, t: float, cfg: EvalConfig | None = None) -> Estimate:
    """``E(T - t | Z_{n-k+1:n} > t)``.

    Residual life of the bare system plus the standby window integral, both
    divided by the bare survival at ``t``.
    """
    cfg = cfg or EvalConfig()
    _check_t(t)
    den = survival_kn(spec, t)
    _denominator(den.value, cfg, "Z_{n-k+1:n} > t")
    bare = integrate_survival(spec, lambda s: _kn_survival_values(spec, s), t, cfg)
    window = _window_integral(spec, t, cfg)
    num = Estimate(bare.value + window.value, bare.error_bound + window.error_bound, Path.QUADRATURE)
    return _ratio(num, den.value, den.error_bound, Path.FACTORED_QUADRATURE)


def mean_standby_gain(spec: SystemSpec, cfg: EvalConfig | None = None) -> Estimate:
    """``E(T - Z_{n-k+1:n})``: how much the standby adds to the mean lifetime."""
    cfg = cfg or EvalConfig()
    est = _window_integral(spec, 0.0, cfg)
    return Estimate(est.value, est.error_bound, Path.FACTORED_QUADRATURE)


def prob_all_alive(spec: SystemSpec, t: float) -> float:
    """``P(Z_{1:n} > t)``."""
    return float(all_components_survive(spec.copula, spec.component.cdf(t)))


def _joint_survival_integrand(spec, Ft, Ftx):
    """``P(Z_{n-k+1:n} > t + x, Z_{1:n} > t)`` from copula cells.

    ``Ft`` is ``F(t)``; ``Ftx`` an array of ``F(t + x)``.  Each cell has ``j``
    arguments at ``F(t)``, ``m`` at ``F(t + x)`` and the rest at 1.
    """
    n, k = spec.n, spec.k
    C = spec.copula

    def D(j, m):
        return diagonal_blocks_cdf(C, [(Ft, j), (Ftx, m)])

    total = np.ones_like(Ftx)
    for j in range(1, n + 1):
        total = total - (-1) ** (j + 1) * comb(n, j) * D(0, j)
    for i in range(1, n - k + 1):
        cell = D(0, i)
        for j in range(1, i + 1):
            cell = cell - (-1) ** (j + 1) * comb(i, j) * D(j, i - j)
        for j in range(1, n - i + 1):
            cell = cell - (-1) ** (j + 1) * comb(n - i, j) * D(0, i + j)
        for j in range(1, i + 1):
            for m in range(1, n - i + 1):
                cell = cell + (-1) ** (j + m) * comb(i, j) * comb(n - i, m) * D(j, i + m - j)
        total = total + comb(n, i) * cell
    return total


def mrl_kn_given_all_alive(spec: SystemSpec, t: float, cfg: EvalConfig | None = None) -> Estimate:
    """``E(Z_{n-k+1:n} - t | Z_{1:n} > t)`` via inclusion-exclusion over copula cells."""
    cfg = cfg or EvalConfig()
    _check_t(t)
    p = _denominator(prob_all_alive(spec, t), cfg, "Z_{1:n} > t")
    F = spec.component
    Ft = F.cdf(t)
    num = integrate_survival(spec, lambda x: _joint_survival_integrand(spec, Ft, F.cdf(t + x)), 0.0, cfg)
    return _ratio(num, p, 0.0, Path.QUADRATURE)


def psi3(spec: SystemSpec, t: float, cfg: EvalConfig | None = None) -> Estimate:
    """``E(T - t | Z_{1:n} > t)`` = bare residual life + expected standby gap."""
    cfg = cfg or EvalConfig()
    _check_t(t)
    p = _denominator(prob_all_alive(spec, t), cfg, "Z_{1:n} > t")
    base = mrl_kn_given_all_alive(spec, t, cfg)

    def gap(x):
        return np.array([factored_gap_integral(spec, t, xi, cfg).value for xi in np.atleast_1d(x)])

    g = integrate_survival(spec, gap, 0.0, cfg)
    return Estimate(base.value + g.value / p, base.error_bound + g.error_bound / p, Path.FACTORED_QUADRATURE)


# --- independent-lifetime closed forms --------------------------------------


def _sf_power_integral(F, power, t, cfg, upper):
    return integrate_1d(lambda z: F.sf(z) ** power, t, upper, cfg)


def mrl_kn_independent(spec: SystemSpec, t: float, cfg: EvalConfig | None = None) -> Estimate:
    """Independent-component ``E(Z_{n-k+1:n} - t | Z_{1:n} > t)`` as a double sum of
    integrated survival powers."""
    cfg = cfg or EvalConfig()
    n, k = spec.n, spec.k
    F = spec.component
    upper = truncation_point(spec, cfg)
    Fbt = F.sf(t)
    val, err = 0.0, 0.0
    for m in range(n - k + 1):
        for i in range(m + 1):
            p = n - m + i
            est = _sf_power_integral(F, p, t, cfg, upper)
            w = comb(n, m) * comb(m, i) * (-1) ** i / Fbt**p
            val += w * est.value
            err += abs(w) * est.error_bound
    return Estimate(val, err, Path.QUADRATURE)


def psi2_independent(spec: SystemSpec, t: float, cfg: EvalConfig | None = None) -> Estimate:
    """Independent-lifetime ``psi2`` with the standby term as a z-space double integral."""
    cfg = cfg or EvalConfig()
    n, k = spec.n, spec.k
    F, G = spec.component, spec.standby
    upper = truncation_point(spec, cfg)
    Fbt = float(_indep_kn_sf(F, n, k, t))
    bare = integrate_1d(lambda s: _indep_kn_sf(F, n, k, s), t, upper, cfg)

    def outer(xs):
        out = []
        for x in np.atleast_1d(xs):
            if x == 0:
                out.append(0.0)
                continue
            inner = integrate_1d(
                lambda z: G.sf(np.maximum(t + x - z, 0.0)) * F.cdf(z) ** (n - k) * F.pdf(z), t, t + x, cfg
            )
            out.append(F.sf(t + x) ** (k - 1) * inner.value)
        return np.array(out)

    win = integrate_1d(outer, 0.0, upper, cfg)
    c = beta_constant(n, k)
    return Estimate((bare.value + c * win.value) / Fbt, (bare.error_bound + c * win.error_bound) / Fbt, Path.QUADRATURE)


def _indep_kn_sf(F, n, k, s):
    Fs = np.asarray(F.cdf(s))
    return 1.0 - sum((-1) ** (i - n + k - 1) * comb(n, i) * comb(i - 1, n - k) * Fs**i for i in range(n - k + 1, n + 1))


def psi3_independent(spec: SystemSpec, t: float, cfg: EvalConfig | None = None) -> Estimate:
    """Independent-lifetime ``psi3``: closed-form bare part plus the standby double integral."""
    cfg = cfg or EvalConfig()
    n, k = spec.n, spec.k
    F, G = spec.component, spec.standby
    upper = truncation_point(spec, cfg)
    zmax = max(float(F.quantile(1.0 - cfg.tail_cut)), t)
    Ft = F.cdf(t)
    base = mrl_kn_independent(spec, t, cfg)

    def outer(xs):
        out = []
        for x in np.atleast_1d(xs):
            inner = integrate_1d(
                lambda z: F.sf(z + x) ** (k - 1) * (F.cdf(z) - Ft) ** (n - k) * F.pdf(z), t, zmax, cfg
            )
            out.append(G.sf(x) * inner.value)
        return np.array(out)

    win = integrate_1d(outer, 0.0, upper, cfg)
    c = beta_constant(n, k) / F.sf(t) ** n
    return Estimate(base.value + c * win.value, base.error_bound + c * win.error_bound, Path.QUADRATURE)
