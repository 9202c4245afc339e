import random
from contextlib import contextmanager

import pytest
from hypothesis import settings

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

DEFAULT_SEED = 20240611

_criteria: list[tuple[str, bool, str, str]] = []


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED,
                     help="seed for the randomized suites")


@pytest.fixture
def seed(request) -> int:
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed) -> random.Random:
    return random.Random(seed)


@pytest.fixture
def criterion():
    """Record an acceptance criterion outcome for the terminal summary."""

    @contextmanager
    def run(cid: str, text: str):
        try:
            yield
        except BaseException as exc:
            _criteria.append((cid, False, text, f"{type(exc).__name__}: {exc}"[:300]))
            print(f"{cid} FAIL {text}")
            raise
        _criteria.append((cid, True, text, ""))
        print(f"{cid} PASS {text}")

    return run


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for cid, ok, text, why in sorted(_criteria, key=lambda c: c[0]):
        line = f"{cid} {'PASS' if ok else 'FAIL'} {text}"
        terminalreporter.write_line(line + (f" ({why})" if why else ""))
