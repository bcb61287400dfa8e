# Audit the state-count estimate and the witness bound without minimizing anything.
from buchi import parse, pretty
from buchi.axioms import render_bound_instance
from buchi.compiler import compile_formula
from buchi.decision import verify_bound
from buchi.syntax import complexity, flatten

phi = parse("V(x) = x & !(x = 0) & !(x = 1)")
print(pretty(flatten(phi)))
print(complexity(phi), complexity(flatten(phi)))

# every node of the compilation stays below 2_N^3, N counting its connectives and quantifiers
cf = compile_formula(phi, 2, audit=True)
print(cf.report.dumps(width=50))

# least witness < p^states <= p^(2_|phi|^3)
report = verify_bound(phi, 2)
print(report.dumps())

# the scheme instance itself, with its numeral written as a tower
print(render_bound_instance(phi, 2))
print(render_bound_instance(parse("E y. x = y + y"), 10))
