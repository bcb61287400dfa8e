# The four atomic relations as small DFAs: x = y, S(x) = y, x + y = z, V(x) = y.
import numpy as np

from buchi import automata as fa
from buchi.base_automata import BASE_AUTOMATA, add_automaton, v_automaton
from buchi.encoding import zip_pad

for p in (2, 3, 5, 10):
    print(p, {name: make(p).n_states for name, make in BASE_AUTOMATA.items()})

# addition reads carries from the low end
A = add_automaton(2)
print(fa.accepts(A, zip_pad((5, 7, 12), 2)), fa.accepts(A, zip_pad((5, 7, 13), 2)))

# whole grids at once
a, b = np.meshgrid(np.arange(50), np.arange(50))
rows = np.c_[a.ravel(), b.ravel(), (a + b).ravel()]
print(fa.accepts_tuples(A, rows).all())

# the V_3 automaton, dead state left out
print(fa.to_dot(v_automaton(3), name="v3", track_names=("x", "y")))
