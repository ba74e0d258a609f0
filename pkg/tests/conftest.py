from __future__ import annotations

import sys
from importlib import resources
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cqpitfall.parser import parse_with_warnings
from cqpitfall.templates import TemplateRegistry

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def animals_text() -> str:
    return resources.files("cqpitfall.data").joinpath("animals.ofn").read_text("utf-8")


@pytest.fixture(scope="session")
def animals(animals_text):
    ontology, warnings = parse_with_warnings(animals_text, "animals")
    return ontology


@pytest.fixture(scope="session")
def animals_warnings(animals_text):
    _, warnings = parse_with_warnings(animals_text, "animals")
    return warnings


@pytest.fixture(scope="session")
def animals_by_name(animals):
    return {t.term.local_name: t for t in animals.terms}


@pytest.fixture(scope="session")
def registry() -> TemplateRegistry:
    return TemplateRegistry.load()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one pass/fail line per acceptance criterion after the run."""
    lines = []
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" in nodeid:
                name = nodeid.split("::")[-1]
                lines.append((name, outcome.upper()))
    if not lines:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, outcome in sorted(lines):
        terminalreporter.write_line(f"{outcome:6s}  {name}")
