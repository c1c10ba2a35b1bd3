import random

import pytest

from gsig.groups import build_group
from gsig.orbit_data import make_data

S3_SPEC = "perm 3; (1 2 3); (1 2)"
D4_SPEC = "perm 4; (1 2 3 4); (1 3)"
Q8_SPEC = "perm 8; (1 2 4 7)(3 6 8 5); (1 3 4 8)(2 5 7 6)"


@pytest.fixture(scope="session")
def S3():
    return build_group(S3_SPEC)


@pytest.fixture(scope="session")
def C3():
    return build_group("cyclic 3")


@pytest.fixture(scope="session")
def C3C3():
    return build_group("abelian 3 3")


def random_data(G, rnd, max_entries=6, nontrivial=True):
    """Random valid orbit data by rejection (product must lie in [G,G])."""
    lo = 1 if nontrivial else 0
    if G.order == 1:
        return make_data(G, [])
    for _ in range(500):
        entries = [(rnd.randrange(lo, G.order), 1) for _ in range(rnd.randint(0, max_entries))]
        try:
            return make_data(G, entries)
        except ValueError:
            continue
    return make_data(G, [])


@pytest.fixture
def rnd():
    return random.Random(12345)
