from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings

from superalg.scalars import VariableContext

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def ctx4():
    return VariableContext.create(0, 4)


@pytest.fixture
def ctx_mixed():
    return VariableContext.create(2, 4)


_VERDICTS = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_VERDICTS] = []


@pytest.fixture
def verdict(request):
    """``verdict(n, title, fn)`` runs ``fn() -> (ok, detail)`` and records one PASS/FAIL line."""
    lines = request.config.stash[_VERDICTS]

    def record(n, title, fn):
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed criterion, reported like one
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        line = f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {title} [{detail}]"
        lines.append((n, line))
        print(line)
        return ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_VERDICTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
