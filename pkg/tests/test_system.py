import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from relstandby import FGM4, Exponential, Independence, SystemSpec, lifetime_from_draws, validate_system
from relstandby.copulas import Copula
from relstandby.errors import DomainError, ValidationError

E2 = Exponential(2.0)


def spec(n=3, k=2, copula=None):
    return SystemSpec(n, k, E2, E2, copula or FGM4())


def test_signed_density_is_structurally_valid():
    r = validate_system(spec(copula=FGM4(0.2, 0.3, 0.5, 0.6, 0.7)))
    assert r.ok
    assert not r.copula_validity.is_proper_density


def test_k_larger_than_n():
    r = validate_system(spec(k=4))
    assert not r.ok and any("k must" in f for f in r.failures)


def test_dimension_mismatch():
    r = validate_system(spec(n=4, k=2))
    assert not r.ok and any("dimension" in f for f in r.failures)
    with pytest.raises(ValidationError) as info:
        validate_system(SystemSpec(4, 7, E2, E2, FGM4()), raise_on_error=True)
    assert len(info.value.failures) == 2


class _Lopsided(Copula):
    """Density that favours the first component, so not exchangeable."""

    family = "lopsided"
    dim = 4

    def _terms(self):
        yield 1.0, (), False
        yield 0.5, (0,), True


def test_asymmetric_copula_rejected():
    r = validate_system(SystemSpec(3, 2, E2, E2, _Lopsided()))
    assert any("symmetric" in f for f in r.failures)


@pytest.mark.parametrize(
    "k, standby, expected",
    [(2, 0.5, (2.5, 2.0, 1.0)), (2, 5.0, (3.0, 2.0, 1.0)), (1, 0.5, (3.5, 3.0, 1.0))],
)
def test_lifetime_examples(k, standby, expected):
    assert lifetime_from_draws(spec(k=k, copula=Independence(4)), [1.0, 2.0, 3.0], standby) == expected


def test_lifetime_rejects_negative():
    with pytest.raises(DomainError):
        lifetime_from_draws(spec(), [1.0, -2.0, 3.0], 0.5)


times = st.floats(0, 100, allow_nan=False)


@given(st.lists(times, min_size=4, max_size=4), times, st.integers(1, 4), st.randoms(use_true_random=False))
def test_lifetime_properties(z, standby, k, rnd):
    s = SystemSpec(4, k, E2, E2, Independence(5))
    T, fail, first = lifetime_from_draws(s, z, standby)
    assert fail <= T <= fail + standby
    perm = list(z)
    rnd.shuffle(perm)
    assert lifetime_from_draws(s, perm, standby) == (T, fail, first)


def test_batch_lifetimes_match_single():
    rng = np.random.default_rng(0)
    z = rng.exponential(size=(50, 3))
    sb = rng.exponential(size=50)
    s = spec(copula=Independence(4))
    T, fail, first = lifetime_from_draws(s, z, sb)
    for i in range(50):
        assert (T[i], fail[i], first[i]) == lifetime_from_draws(s, z[i], sb[i])


def test_spec_dict_round_trip():
    s = spec(copula=FGM4(0.1, 0.2, 0.3, 0.4, 0.5))
    assert SystemSpec.from_dict(s.to_dict()) == s
