# Compile formulas to automata and read off truth values, witnesses and solution sets.
import time

from buchi import decide, min_witness, parse, solutions
from buchi.compiler import compile_formula

# no power of 2 lies strictly between 2^k and 2^(k+1)
sentence = parse("A x. (V(x) = x -> !(E y. (x < y & y < x + x & V(y) = y)))")
t = time.perf_counter()
print(decide(sentence, 2), f"{time.perf_counter() - t:.3f}s")

# the same question for every base
print({p: decide(sentence, p) for p in (2, 3, 5, 10)})

# witnesses and solution sets come from the same automaton
phi = parse("V(x) = x & !(x = 0) & !(x = 1)")
print({p: min_witness(phi, p) for p in (2, 3, 5, 10)})
print(solutions(parse("V(x) = x"), 3, 100))
print(solutions(parse("E y. x = y + y + y + 1"), 2, 30))

# the inner formula: which x have a power of two strictly between x and 2x?
inner = parse("E y. x < y & y < x + x & V(y) = y")
print(solutions(inner, 2, 40))

# relations between several variables
print(solutions(parse("x + y = 5 & V(x) = x"), 2, 5))

cf = compile_formula(inner, 2)
print(cf.states, "states after minimization")
