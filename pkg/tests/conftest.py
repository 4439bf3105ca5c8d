"""Shared fixtures and reference oracles.

The oracles here are deliberately naive: plain dict compositions and a
set-of-frozensets breadth-first closure.  Engine results are checked
against these, never the other way around.
"""

import random

import pytest

from invsemi import PartialBijection


def compose_dicts(f: dict, g: dict) -> dict:
    """Reference composition: apply g first, then f."""
    return {x: f[g[x]] for x in g if g[x] in f}


def invert_dict(f: dict) -> dict:
    return {y: x for x, y in f.items()}


def closure_dicts(generators, max_size=50000):
    """Reference closure under composition and inverse, as frozen pair sets."""
    seen = {frozenset(g.items()) for g in generators}
    frontier = [dict(s) for s in seen]
    while frontier:
        fresh = []
        for g in frontier:
            for s in list(seen):
                for prod in (compose_dicts(g, dict(s)), compose_dicts(dict(s), g)):
                    key = frozenset(prod.items())
                    if key not in seen:
                        seen.add(key)
                        fresh.append(prod)
            inv = invert_dict(g)
            key = frozenset(inv.items())
            if key not in seen:
                seen.add(key)
                fresh.append(inv)
        if len(seen) > max_size:
            raise RuntimeError("oracle closure grew past the test budget")
        frontier = fresh
    return seen


def random_partial_injection(rng: random.Random, window: int) -> PartialBijection:
    points = [x for x in range(window) if rng.random() < 0.5]
    targets = rng.sample(range(window), len(points))
    return PartialBijection.of(zip(points, targets), window)


@pytest.fixture
def rng():
    return random.Random(20260817)


# -- acceptance summary -------------------------------------------------
# one verdict line per acceptance criterion at the end of the run

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or report.outcome == "failed":
        name = report.nodeid.split("::test_criterion_", 1)[1]
        num = int(name.split("_", 1)[0])
        label = name.split("_", 1)[1].replace("_", " ")
        current = _ACCEPTANCE.get(num)
        verdict = "PASS" if report.outcome == "passed" else "FAIL"
        if current != (label, "FAIL"):
            _ACCEPTANCE[num] = (label, verdict)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        label, verdict = _ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {verdict} - {label}")
