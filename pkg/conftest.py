import pytest

from app import create_app
from config import Config


class TestConfig(Config):
    TESTING = True
    WORKERS = 1
    DERIVE_MAX = 40


def pytest_addoption(parser):
    parser.addoption('--run-slow', action='store_true', default=False,
                     help='run the n = 14 brute force and closure-only runs at n = 12, 13')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: long-running search, needs --run-slow')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--run-slow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --run-slow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def app():
    app = create_app(TestConfig)
    with app.app_context():
        yield app


@pytest.fixture
def runner(app):
    return app.test_cli_runner()
