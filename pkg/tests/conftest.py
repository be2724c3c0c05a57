import random

import pytest
from hypothesis import HealthCheck, settings

from qgspectra import (
    ChainGraphSpec,
    StarGraphSpec,
    build_chain,
    build_star,
)

settings.register_profile(
    "suite", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")

# The worked three-bond star: actions (19, 17, 5, -3), amplitudes
# (3/4, 1/2, -1/4), regular at level 1 with sum 16/19.
WORKED_ALPHA = (1.0, 7.0, 11.0)
WORKED_BETA = (0.1, 0.2, 0.5)

# Chain over the same bond actions whose reflection coefficients come out
# small: r2 = -1/9, r3 = 1/4, amplitude sum 7/18, regular as given.
WORKED_CHAIN_ACTIONS = (19.0, 17.0, 5.0, -3.0)
WORKED_CHAIN_BETA = (0.4, 0.5, 0.3)


@pytest.fixture(scope="session")
def worked_star():
    return build_star(StarGraphSpec(WORKED_ALPHA, WORKED_BETA))


@pytest.fixture(scope="session")
def worked_chain():
    return build_chain(ChainGraphSpec(WORKED_CHAIN_ACTIONS, WORKED_CHAIN_BETA))


def random_star(rng: random.Random):
    lengths = tuple(rng.uniform(0.5, 20.0) for _ in range(3))
    lambdas = tuple(rng.uniform(0.0, 0.99) for _ in range(3))
    return build_star(StarGraphSpec.from_bonds(lengths, lambdas))


def random_chain(rng: random.Random):
    # Admissible actions are the star combinations of three positive bond
    # actions, which keeps every |S_j| strictly under S0 with enough
    # margin that the ladder terminates quickly.
    bond = tuple(rng.uniform(0.5, 10.0) for _ in range(3))
    actions = (
        bond[0] + bond[1] + bond[2],
        -bond[0] + bond[1] + bond[2],
        bond[0] - bond[1] + bond[2],
        bond[0] + bond[1] - bond[2],
    )
    beta = tuple(rng.uniform(0.05, 1.0) for _ in range(3))
    return build_chain(ChainGraphSpec(actions, beta))


@pytest.fixture(scope="session")
def case_suite(worked_star, worked_chain):
    """The 52 functions the oracle-equivalence criteria run on."""
    rng = random.Random(7)
    cases = [("worked-star", worked_star), ("worked-chain", worked_chain)]
    cases += [(f"star-{i}", random_star(rng)) for i in range(25)]
    cases += [(f"chain-{i}", random_chain(rng)) for i in range(25)]
    return cases
