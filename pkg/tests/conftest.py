from pathlib import Path

import numpy as np
import pytest

from revmark.image import GrayImage

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def golden():
    return lambda name: (GOLDEN / name).read_bytes()


def random_image(rng, height=8, width=8):
    return GrayImage(rng.integers(0, 256, size=(height, width), dtype=np.uint8))


_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and item.module.__name__.endswith("test_acceptance"):
        title = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _ACCEPTANCE.append((title, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for title, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {title}")
