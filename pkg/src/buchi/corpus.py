"""Formula corpus files and the automaton-versus-oracle comparison.

Corpus format: UTF-8 text, one formula per line.  ``# p=2,3 B=100`` is a
directive setting the bases and the oracle bound for the following lines;
other ``#`` lines and blank lines are ignored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import List, Optional, Tuple

import numpy as np

from .compiler import compile_formula
from .decision import accepts_numbers, bounded_eval, bounded_eval_many
from .syntax import parse, free_vars

_DIRECTIVE = re.compile(r"#\s*p=(?P<p>[\d,]+)\s+B=(?P<B>\d+)\s*$")


@dataclass(frozen=True)
class CorpusEntry:
    text: str
    formula: object
    bases: Tuple[int, ...]
    bound: int
    line: int

    @property
    def free(self):
        return free_vars(self.formula)


def parse_corpus(text: str) -> List[CorpusEntry]:
    bases, bound = (2,), 0
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _DIRECTIVE.match(line)
            if m:
                bases = tuple(int(b) for b in m["p"].split(","))
                bound = int(m["B"])
            continue
        out.append(CorpusEntry(line, parse(line), bases, bound, lineno))
    return out


def load_corpus(path: Optional[str] = None) -> List[CorpusEntry]:
    """Read a corpus file, or the bundled reference corpus when path is None."""
    if path is None:
        text = resources.files("buchi").joinpath("data/corpus.txt").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    return parse_corpus(text)


@dataclass
class OracleMismatch:
    entry: CorpusEntry
    base: int
    value: Optional[int]
    automaton: bool
    oracle: bool

    def __str__(self):
        at = "" if self.value is None else f" at x={self.value}"
        return (
            f"line {self.entry.line} p={self.base}{at}: automaton={self.automaton} "
            f"oracle={self.oracle} :: {self.entry.text}"
        )


def oracle_check(entry: CorpusEntry, p: int, n_max: int = 2000, bound: Optional[int] = None) -> List[OracleMismatch]:
    """Compare automaton membership with bounded evaluation for x = 0..n_max.

    Sentences are compared once.  Formulas with more than one free variable
    are not covered.
    """
    B = entry.bound if bound is None else bound
    fv = entry.free
    cf = compile_formula(entry.formula, p)
    if not fv:
        got = bool(cf.automaton.accepting[cf.automaton.initial_state])
        want = bounded_eval(entry.formula, {}, B, p)
        return [] if got == want else [OracleMismatch(entry, p, None, got, want)]
    if len(fv) != 1:
        raise ValueError(f"line {entry.line}: oracle comparison needs at most one free variable")
    ns = np.arange(n_max + 1)
    got = accepts_numbers(cf, ns)
    want = bounded_eval_many(entry.formula, fv[0], ns, B, p)
    bad = np.flatnonzero(got != want)
    return [OracleMismatch(entry, p, int(n), bool(got[n]), bool(want[n])) for n in bad]
