import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def census84():
    """The full (8, 4) census, classified; shared because it is the one
    expensive fixture in the suite."""
    from spaving.census import classify_ingleton

    return classify_ingleton(8, 4)
