import pytest

from oracle import brute_force_game


@pytest.fixture
def brute():
    return brute_force_game
