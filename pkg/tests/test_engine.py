import math

import numpy as np
import pytest
from scipy.integrate import simpson

from conftest import THETA_B, two_of_three
from relstandby import EvalConfig, Exponential, Independence, SystemSpec
from relstandby.engine import (
    Estimate,
    Path,
    beta_constant,
    factored_integral_standby,
    integrate_1d,
    mc_integral_standby,
    split_counts,
)
from relstandby.errors import DomainError, IntegrandNaNError, QuadratureError
from relstandby.reliability import survival_T_fgm_2of3, survival_T_independent, survival_kn


def test_total_probability(cfg):
    est = integrate_1d(lambda x: 2 * np.exp(-2 * x), 0, np.inf, cfg)
    assert est.value == pytest.approx(1.0, abs=1e-8)
    assert est.error_bound <= 1e-8
    assert est.path is Path.QUADRATURE


def test_half_gaussian(cfg):
    import mpmath

    mpmath.mp.dps = 30
    oracle = float(mpmath.quad(lambda x: mpmath.e ** (-x * x), [0, mpmath.inf]))
    est = integrate_1d(lambda x: np.exp(-x * x), 0, np.inf, cfg)
    assert est.value == pytest.approx(oracle, abs=1e-10)
    assert est.value == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-10)


def test_lomax_two_of_three_mean(cfg):
    est = integrate_1d(lambda x: 3 * (1 + x) ** -4.0 - 2 * (1 + x) ** -6.0, 0, np.inf, cfg)
    assert est.value == pytest.approx(0.6, abs=1e-9)


def test_randomised_polynomial_exponential_against_simpson(cfg):
    rng = np.random.default_rng(2024)
    for _ in range(20):
        coefs = rng.uniform(-1, 2, rng.integers(1, 5))
        rate = rng.uniform(0.5, 3.0)
        b = rng.uniform(1.0, 6.0)

        def f(x):
            return np.polynomial.polynomial.polyval(x, coefs) * np.exp(-rate * x)

        x = np.linspace(0, b, 200_001)
        oracle = simpson(f(x), x=x)
        got = integrate_1d(f, 0.0, b, cfg).value
        assert got == pytest.approx(oracle, rel=1e-7, abs=1e-12)


def test_vectorized_false_and_empty_interval(cfg):
    assert integrate_1d(lambda x: math.cos(x), 0, math.pi / 2, cfg, vectorized=False).value == pytest.approx(1.0, abs=1e-12)
    assert integrate_1d(np.exp, 1.0, 1.0, cfg).value == 0.0
    with pytest.raises(DomainError):
        integrate_1d(np.exp, 2.0, 1.0, cfg)


def test_nan_is_reported_with_abscissa(cfg):
    with pytest.raises(IntegrandNaNError) as info:
        integrate_1d(lambda x: np.where(x > 0.5, np.nan, 1.0), 0, 1, cfg)
    assert info.value.abscissa > 0.5


def test_non_convergence_carries_best_estimate():
    tight = EvalConfig(quad_max_depth=2, quad_rel_tol=1e-14, quad_abs_tol=1e-14)
    with pytest.raises(QuadratureError) as info:
        integrate_1d(lambda x: np.abs(x - 0.3337) ** 0.5, 0, 1, tight)
    assert np.isfinite(info.value.value) and info.value.error_bound > 0


@pytest.mark.parametrize("n,k", [(3, 2), (4, 3), (5, 1), (6, 6), (10, 4)])
def test_beta_constant(n, k):
    B = math.gamma(n - k + 1) * math.gamma(k) / math.gamma(n + 1)
    assert beta_constant(n, k) == pytest.approx(1 / B, rel=1e-12)
    assert isinstance(beta_constant(n, k), int)


def test_estimate_rejects_negative_error():
    with pytest.raises(DomainError):
        Estimate(1.0, -1.0, Path.QUADRATURE)


def test_split_counts():
    assert split_counts(10, 3) == [4, 3, 3]
    assert sum(split_counts(1_000_003, 16)) == 1_000_003


# --- factored path --------------------------------------------------------


@pytest.mark.parametrize("s", [0.1, 0.5, 1.0, 2.5])
@pytest.mark.parametrize("n,k", [(3, 2), (4, 3), (5, 2), (4, 1)])
def test_factored_independence_matches_single_integral(cfg, n, k, s):
    m = Exponential(2.0)
    spec = SystemSpec(n, k, m, Exponential(0.7), Independence(n + 1))
    want = survival_T_independent(spec, s, cfg).value - survival_kn(spec, s).value
    assert factored_integral_standby(spec, s, cfg).value == pytest.approx(want, abs=1e-8)


def test_factored_fgm_matches_hand_reduction(cfg):
    spec = two_of_three(Exponential(2.0), THETA_B)
    want = survival_T_fgm_2of3(spec, 0.5, cfg).value - survival_kn(spec, 0.5).value
    got = factored_integral_standby(spec, 0.5, cfg)
    assert got.value == pytest.approx(want, abs=1e-8)
    assert got.path is Path.FACTORED_QUADRATURE


def test_factored_at_zero(cfg):
    assert factored_integral_standby(two_of_three(Exponential(2.0), THETA_B), 0.0, cfg).value == 0.0


# --- Monte Carlo path -----------------------------------------------------


MC = EvalConfig(mc_samples=400_000, seed=99)


def test_mc_independence_matches_closed_form(cfg):
    spec = two_of_three(Exponential(2.0))
    want = survival_T_independent(spec, 0.5, cfg).value - survival_kn(spec, 0.5).value
    got = mc_integral_standby(spec, 0.5, MC)
    assert got.path is Path.MONTE_CARLO
    assert abs(got.value - want) <= 4 * got.error_bound


def test_mc_signed_fgm_matches_hand_reduction(cfg):
    spec = two_of_three(Exponential(2.0), THETA_B)
    want = survival_T_fgm_2of3(spec, 0.5, cfg).value - survival_kn(spec, 0.5).value
    got = mc_integral_standby(spec, 0.5, MC)
    assert abs(got.value - want) <= 4 * got.error_bound


def test_mc_at_zero():
    est = mc_integral_standby(two_of_three(Exponential(2.0)), 0.0, MC)
    assert (est.value, est.error_bound) == (0.0, 0.0)


def test_mc_deterministic_across_thread_counts(monkeypatch):
    spec = two_of_three(Exponential(2.0), (0.1,) * 5)
    cfg = EvalConfig(mc_samples=50_000, seed=7)
    monkeypatch.setenv("RELSTANDBY_THREADS", "1")
    a = mc_integral_standby(spec, 0.4, cfg)
    b = mc_integral_standby(spec, 0.4, cfg)
    monkeypatch.setenv("RELSTANDBY_THREADS", "4")
    c = mc_integral_standby(spec, 0.4, cfg)
    assert a == b == c
    d = mc_integral_standby(spec, 0.4, cfg.with_(seed=8))
    assert d.value != a.value


@pytest.mark.parametrize("kw", [dict(quad_rel_tol=0), dict(mc_samples=999), dict(tail_cut=1e-3), dict(seed=-1)])
def test_eval_config_invariants(kw):
    with pytest.raises(DomainError):
        EvalConfig(**kw)
