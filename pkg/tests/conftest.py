import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


@pytest.fixture(scope="session")
def small_primes():
    return SMALL_PRIMES
