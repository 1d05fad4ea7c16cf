from __future__ import annotations

import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from asdlkit.grammars import load

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

GOLDEN = Path(__file__).parent / "golden"
UPDATE_GOLDEN = os.environ.get("ASDLKIT_UPDATE_GOLDEN") == "1"

# every rcc pickle produced by the suite, linted for uid closure at the end
EMITTED_PICKLES: list[tuple[str, bytes]] = []
# acceptance criteria outcomes: (number, title, passed, detail)
CRITERIA: list[tuple[int, str, bool, str]] = []


def record_pickle(label: str, data: bytes) -> bytes:
    EMITTED_PICKLES.append((label, data))
    return data


def check_golden(name: str, text: str) -> None:
    path = GOLDEN / name
    if UPDATE_GOLDEN or not path.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="\n")
        if not UPDATE_GOLDEN:
            pytest.fail(f"golden file {name} was missing and has been created; rerun")
    assert path.read_text(encoding="utf-8") == text, f"output differs from golden {name}"


@pytest.fixture(scope="session")
def ir():
    return load("IR")


@pytest.fixture(scope="session")
def ir_named():
    return load("IR_named")


@pytest.fixture(scope="session")
def ir_attrs():
    return load("IR_attrs")


@pytest.fixture(scope="session")
def rcc():
    return load("rcc")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(CRITERIA):
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}"
                                    + (f"  ({detail})" if detail else ""))


def pytest_configure(config):
    config.addinivalue_line("markers", "run_last: run after every other test in the session")


def pytest_collection_modifyitems(items):
    items.sort(key=lambda item: item.get_closest_marker("run_last") is not None)
