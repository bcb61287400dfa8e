# The nine fixed axioms, each decided in the standard model for several bases.
from buchi.axioms import axiom_list, check_axioms, check_base_axioms, parse_axiom

for a in axiom_list(3):
    print(a.label, a.text())

for p in (2, 3, 5, 10):
    verdicts = check_base_axioms(p)
    print(p, all(v.holds for v in verdicts))

# a wrong "axiom" is caught
print(check_axioms([parse_axiom("V(x) = 1", "bad")], 2)[0].line())
