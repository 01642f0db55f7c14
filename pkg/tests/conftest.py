import random

import pytest
from hypothesis import HealthCheck, settings

from tempus.tvg import Lifetime, TemporalEdge, TemporalNode, build_graph

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

_criteria: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            number, title = value
            _criteria[number] = (title, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcome = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d} {outcome}  {title}")


@pytest.fixture
def criterion(record_property):
    def mark(number: int, title: str):
        record_property("criterion", (number, title))
    return mark


def make_graph(edges, lifetime=None, nodes=None):
    """Graph from ``(u, v, birth)`` triples; node births default to their
    first edge."""
    first: dict[str, int] = {}
    for u, v, b in edges:
        for x in (u, v):
            first[x] = min(first.get(x, b), b)
    node_list = [TemporalNode(x, birth=b) for x, b in sorted(first.items())]
    if nodes:
        node_list += [TemporalNode(x, birth=b) for x, b in nodes]
    lt = Lifetime(*lifetime) if lifetime else None
    return build_graph(node_list, [TemporalEdge(u, v, b) for u, v, b in edges], lt)


@pytest.fixture
def witness():
    """Path a-b-c whose route from a to c is born (2007, 2006)."""
    return make_graph([("a", "b", 2007), ("b", "c", 2006)], lifetime=(2005, 2011))


@pytest.fixture
def rng():
    return random.Random(1234)
