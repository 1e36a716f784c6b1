import pytest

from relstandby import FGM4, EvalConfig, Exponential, FgmPairwise, Independence, Lomax, SystemSpec, Weibull

THETA_A = (0.1, 0.2, 0.3, 0.4, 0.5)
THETA_B = (0.2, 0.3, 0.5, 0.6, 0.7)
VALID_THETA = (0.1, 0.1, 0.1, 0.1, 0.1)

CASES = {
    "exp2": Exponential(2.0),
    "lomax": Lomax(2.0, 1.0),
    "weibull": Weibull(2.0, 1.0),
}


def two_of_three(marginal, theta=(0, 0, 0, 0, 0), standby=None):
    return SystemSpec(3, 2, marginal, standby or marginal, FGM4(*theta))


@pytest.fixture(scope="session")
def cfg():
    return EvalConfig()


@pytest.fixture(scope="session")
def spec_matrix():
    """Specs used wherever a property must hold for 'every spec in the matrix'."""
    specs = {}
    for name, m in CASES.items():
        for label, th in (("indep", (0,) * 5), ("A", THETA_A), ("B", THETA_B)):
            specs[f"{name}-{label}"] = two_of_three(m, th)
    e1 = Exponential(1.0)
    specs["exp1-valid"] = two_of_three(e1, VALID_THETA)
    specs["exp1-n4k3-pairwise"] = SystemSpec(4, 3, e1, e1, FgmPairwise(5, 0.2, 0.1))
    specs["exp1-n3k1-indep"] = SystemSpec(3, 1, e1, e1, Independence(4))
    return specs
