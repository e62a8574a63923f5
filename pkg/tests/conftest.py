import random

import pytest

from bzchambers.specs import bundled, spec_from_block_gram


@pytest.fixture
def hilb2():
    return bundled("hilb2")


@pytest.fixture
def a2():
    """Two exceptional primes meeting properly: Gram [[-2,1],[1,-2]]."""
    return spec_from_block_gram([[-2, 1], [1, -2]])


@pytest.fixture
def a1a1():
    """Two orthogonal exceptional primes: Gram [[-2,0],[0,-2]]."""
    return spec_from_block_gram([[-2, 0], [0, -2]])


@pytest.fixture
def degenerate():
    """Gram [[-2,2],[2,-2]]: each prime is a block, the pair is not."""
    return spec_from_block_gram([[-2, 2], [2, -2]])


@pytest.fixture
def rng():
    return random.Random(20240601)
