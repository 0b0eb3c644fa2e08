import pytest


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=0,
                     help="base seed for the randomized tests")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")
