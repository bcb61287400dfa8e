import functools

import pytest

from buchi.compiler import compile_formula
from buchi.corpus import load_corpus
from buchi.decision import verify_bound

BASES = (2, 3, 5, 10)


@functools.lru_cache(maxsize=None)
def corpus():
    return tuple(load_corpus())


@functools.lru_cache(maxsize=None)
def compiled(text, p, audit=False):
    entry = next(e for e in corpus() if e.text == text)
    return compile_formula(entry.formula, p, audit)


@functools.lru_cache(maxsize=None)
def bound_report(text, p):
    entry = next(e for e in corpus() if e.text == text)
    return verify_bound(entry.formula, p)


@pytest.fixture(scope="session")
def entries():
    return corpus()


# acceptance criteria append (number, passed, detail) here; printed at the end of the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
