# Cross-check compiled automata against brute-force bounded evaluation on the bundled corpus.
import time

import numpy as np

from buchi.corpus import load_corpus, oracle_check
from buchi.decision import bounded_eval, bounded_eval_many
from buchi.syntax import parse

# the oracle is only as good as its quantifier bound
phi = parse("E y. x = y + y")
print(bounded_eval(phi, {"x": 6}, 10), bounded_eval(phi, {"x": 6}, 2))
print(np.flatnonzero(bounded_eval_many(phi, "x", np.arange(20), 5)))

entries = load_corpus()
t = time.perf_counter()
bad = [m for e in entries for p in e.bases for m in oracle_check(e, p, n_max=2000)]
print(len(entries), "formulas,", len(bad), "mismatches,", f"{time.perf_counter() - t:.1f}s")
