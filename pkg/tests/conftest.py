import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "superkit",
    max_examples=30,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("superkit")


@pytest.fixture(scope="session")
def sig2():
    from superkit.superpoly import grassmann_signature
    return grassmann_signature(2)


@pytest.fixture(scope="session")
def sig3():
    from superkit.superpoly import grassmann_signature
    return grassmann_signature(3)


@pytest.fixture(scope="session")
def sig4():
    from superkit.superpoly import grassmann_signature
    return grassmann_signature(4)
