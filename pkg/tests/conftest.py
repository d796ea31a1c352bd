import os

import pytest
from hypothesis import HealthCheck, settings

from visrecon.generate import corpus, symmetric_corpus

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def corpus_500():
    return corpus(500, (4, 15), seed0=1)


@pytest.fixture(scope="session")
def corpus_200(corpus_500):
    return corpus_500[:200]


@pytest.fixture(scope="session")
def sym_corpus():
    return symmetric_corpus(40)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        verdict, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  {detail}")
