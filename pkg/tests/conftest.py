from pathlib import Path

import pytest

from nbcss.formats import parse_dense
from nbcss.hgp import hgp

DATA = Path(__file__).parent / "data"

_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def seeds():
    h1 = parse_dense((DATA / "hgp_h1.txt").read_text())
    h2 = parse_dense((DATA / "hgp_h2.txt").read_text())
    return h1, h2


@pytest.fixture(scope="session")
def small_hgp(seeds):
    """HGP of the two 2x3 seeds: a 6x13 pair with sixteen 2-overlaps."""
    return hgp(*seeds)


@pytest.fixture(scope="session")
def listed_relations():
    rows = (DATA / "listed_relations.txt").read_text().split("\n")
    return [tuple(int(x) for x in r.split()) for r in rows if r.strip()]


@pytest.fixture
def report():
    """Record one pass/fail line for the terminal summary."""

    def _report(criterion: str, ok: bool, detail: str = "") -> None:
        _acceptance_lines.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}" + (f" -- {detail}" if detail else ""))

    return _report


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
