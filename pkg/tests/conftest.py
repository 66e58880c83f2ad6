"""Shared fixtures plus per-criterion summary lines for the gate tests.

Tests named ``test_a<N>_...`` in test_acceptance.py are collected and a
PASS/FAIL line per criterion is printed after the run.
"""

from __future__ import annotations

import io
import re

import pytest

from erasearch import sample_data
from erasearch.corpus import CorpusIndex
from erasearch.kg import build_graph, parse_triples
from erasearch.temporal import Period

# -- fixtures ----------------------------------------------------------------


@pytest.fixture(scope="session")
def toy_graph():
    return build_graph(parse_triples(sample_data.generate_toy_graph()))


@pytest.fixture(scope="session")
def toy_index():
    # frozen after load; safe to share across tests
    index = CorpusIndex()
    index.load_jsonl(io.BytesIO(sample_data.generate_toy_corpus(50, 7)))
    index.freeze()
    return index


@pytest.fixture
def revolution_period():
    return Period("French Revolution", 1789, 1799)


# -- acceptance summary ------------------------------------------------------

_GATE_RE = re.compile(r"test_acceptance\.py::test_(a\d+)_(\w+)")
_gate_results: dict[str, tuple[int, str, str]] = {}


def pytest_runtest_logreport(report):
    m = _GATE_RE.search(report.nodeid)
    if not m:
        return
    criterion = m.group(1).upper()
    label = m.group(2).replace("_", " ")
    number = int(criterion[1:])
    if report.when == "call":
        outcome = "SKIP" if report.skipped else ("PASS" if report.passed else "FAIL")
        _gate_results[criterion] = (number, label, outcome)
    elif report.failed:
        _gate_results[criterion] = (number, label, "FAIL")
    elif report.skipped and criterion not in _gate_results:
        _gate_results[criterion] = (number, label, "SKIP")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _gate_results:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, (_, label, outcome) in sorted(
        _gate_results.items(), key=lambda kv: kv[1][0]
    ):
        terminalreporter.write_line(f"{criterion} {outcome} - {label}")
