import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpora import absa_toy, attack_corpus, ner_corpus, nli_toy, pos_toy, toy_sa

from flint.resources import bundled_resources


@pytest.fixture(scope="session")
def resources():
    return bundled_resources()


@pytest.fixture(scope="session")
def ner_data():
    return ner_corpus()


@pytest.fixture(scope="session")
def sa_data():
    return toy_sa()


@pytest.fixture(scope="session")
def absa_data():
    return absa_toy()


@pytest.fixture(scope="session")
def nli_data():
    return nli_toy()


@pytest.fixture(scope="session")
def pos_data():
    return pos_toy()


@pytest.fixture(scope="session")
def attack_data():
    return attack_corpus()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", "call") != "call":
                continue
            if "test_acceptance.py" in report.nodeid:
                rows.append((report.nodeid.split("::")[-1], outcome == "passed"))
    if rows:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for name, ok in rows:
            terminalreporter.write_line(f"  [{'PASS' if ok else 'FAIL'}] {name}")
