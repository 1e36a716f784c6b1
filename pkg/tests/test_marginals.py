import math

import numpy as np
import pytest
from scipy import integrate

from relstandby.errors import DomainError, UnsupportedOperationError
from relstandby.marginals import Exponential, Lomax, Tabulated, Weibull, eval_marginal, marginal_from_dict, quantile

CLOSED = [Exponential(2.0), Exponential(0.3), Lomax(2.0, 1.0), Lomax(3.5, 0.4), Weibull(2.0, 1.0), Weibull(0.8, 2.5)]


def test_exponential_at_zero():
    assert eval_marginal(Exponential(2.0), 0.0) == (0.0, 2.0, 1.0)


def test_lomax_at_one():
    F, f, S = eval_marginal(Lomax(2.0, 1.0), 1.0)
    assert F == pytest.approx(0.75, abs=1e-15)
    assert f == pytest.approx(0.25, abs=1e-15)
    assert S == pytest.approx(0.25, abs=1e-15)


def test_weibull_at_one():
    F, f, S = eval_marginal(Weibull(2.0, 1.0), 1.0)
    assert F == pytest.approx(1 - math.exp(-1), rel=1e-14)
    assert f == pytest.approx(2 * math.exp(-1), rel=1e-14)
    assert S == pytest.approx(math.exp(-1), rel=1e-14)


@pytest.mark.parametrize("m", CLOSED, ids=repr)
def test_cdf_plus_survival_is_one(m):
    z = np.linspace(0, 10, 101)
    F, _, S = eval_marginal(m, z)
    assert np.all(F + S == 1.0)


@pytest.mark.parametrize(
    "m, p, expected",
    [(Exponential(2.0), 0.0, 0.0), (Exponential(2.0), 1 - math.exp(-1), 0.5), (Lomax(2.0, 1.0), 0.75, 1.0)],
)
def test_quantile_examples(m, p, expected):
    assert quantile(m, p) == pytest.approx(expected, rel=1e-14, abs=1e-15)


@pytest.mark.parametrize("m", CLOSED, ids=repr)
def test_pdf_is_derivative_of_cdf(m):
    rng = np.random.default_rng(1)
    z = rng.uniform(0.01, 10, 100)
    h = 1e-5
    fd = (m.cdf(z + h) - m.cdf(z - h)) / (2 * h)
    assert np.max(np.abs(fd - m.pdf(z))) <= 1e-6


@pytest.mark.parametrize("m", CLOSED, ids=repr)
def test_quantile_inverts_cdf(m):
    z = np.linspace(m.quantile(0.01), m.quantile(0.999), 50)
    assert np.allclose(m.quantile(m.cdf(z)), z, rtol=1e-9, atol=0)


@pytest.mark.parametrize("m", CLOSED, ids=repr)
def test_density_integrates_to_one(m):
    upper = m.quantile(1 - 1e-9)
    val, _ = integrate.quad(m.pdf, 0, upper, limit=200, points=[m.quantile(0.5)])
    assert val == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("m", CLOSED, ids=repr)
def test_cdf_limits(m):
    assert m.cdf(0.0) == 0.0
    z = np.linspace(0, 50, 500)
    assert np.all(np.diff(m.cdf(z)) >= 0)
    assert m.cdf(1e9) == pytest.approx(1.0, abs=1e-6)


def test_negative_time_rejected():
    with pytest.raises(DomainError):
        Exponential(1.0).cdf(-0.1)


@pytest.mark.parametrize("p", [-0.1, 1.0, 1.5])
def test_quantile_domain(p):
    with pytest.raises(DomainError):
        Exponential(1.0).quantile(p)


def test_tabulated_interpolation_and_no_pdf():
    m = Tabulated(z=(0, 1, 2, 3), F=(0, 0.5, 0.5, 1.0))
    assert m.cdf(0.5) == 0.25
    assert m.cdf(2.5) == 0.75
    assert m.cdf(10.0) == 1.0
    # flat stretch maps to its left end, the infimum of {z : F(z) >= p}
    assert m.quantile(0.5) == 1.0
    assert m.quantile(0.75) == 2.5
    with pytest.raises(UnsupportedOperationError):
        m.pdf(1.0)


def test_tabulated_rejects_bad_grid():
    with pytest.raises(DomainError):
        Tabulated(z=(0, 1), F=(0, 0.5))
    with pytest.raises(DomainError):
        Tabulated(z=(0, 2, 1), F=(0, 0.5, 1))


def test_round_trip_dict():
    for m in CLOSED + [Tabulated(z=(0, 1, 2), F=(0, 0.4, 1))]:
        assert marginal_from_dict(m.to_dict()) == m
