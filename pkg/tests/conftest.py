from __future__ import annotations

import itertools

import pytest

from drhalg.drh import LatticePath


def all_paths(max_len: int, min_len: int = 0):
    for l in range(min_len, max_len + 1):
        for w in itertools.product("NE", repeat=l):
            yield LatticePath("".join(w))


@pytest.fixture
def nnen():
    return LatticePath.parse("NNEN")


def pytest_terminal_summary(terminalreporter):
    try:
        from tests.test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
