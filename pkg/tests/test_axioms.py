import pytest

from buchi.axioms import (
    axiom_list,
    bound_instance,
    check_axioms,
    check_base_axioms,
    check_bound_instance,
    parse_axiom,
    render_bound_instance,
)
from buchi.bounds import cmp, n_phi
from buchi.syntax import And, complexity, free_vars, parse

BASES = (2, 3, 5, 10)


def test_axiom_list_shape():
    axioms = {a.label: a for a in axiom_list(2)}
    assert list(axioms) == ["S0", "S1", "S2", "A0", "A1", "V0", "V1", "V2", "V3"]
    assert all(free_vars(a.sentence) == () for a in axioms.values())
    assert axioms["A0"].text() == "A x. x + 0 = x"
    assert axioms["V1"].text() == "V(1) = 1"
    assert axioms["S0"].text() == "A x. A y. S(x) = S(y) -> x = y"


@pytest.mark.parametrize("p,conjuncts", [(2, 1), (3, 2), (5, 4), (10, 9)])
def test_v3_conjuncts(p, conjuncts):
    v3 = {a.label: a for a in axiom_list(p)}["V3"].sentence.phi
    count = 1
    while isinstance(v3, And):
        v3, count = v3.phi, count + 1
    assert count == conjuncts


@pytest.mark.parametrize("p", BASES)
def test_base_axioms_hold(p):
    verdicts = check_base_axioms(p)
    assert len(verdicts) == 9 and all(v.holds for v in verdicts)
    for v in verdicts:
        label, text, verdict = v.line().split("\t")
        assert label == v.axiom.label and verdict == "true" and parse(text) == v.axiom.sentence


def test_corrupted_axiom_fails():
    bad = parse_axiom("V(x) = 1", "bad")
    assert bad.text() == "A x. V(x) = 1"
    [verdict] = check_axioms([bad], 2)
    assert not verdict.holds and verdict.line().endswith("\tfalse")


def test_bound_instance():
    assert render_bound_instance(parse("x = 0"), 2) == "E x. x = 0 -> E x <= [2^(2_5^3)]. x = 0"
    for text in ["V(x) = x & !(x = 0)", "E y. x = y + y", "x = 8"]:
        for p in (2, 10):
            phi = parse(text)
            inst = bound_instance(phi, p)
            assert cmp(inst.numeral_bound, n_phi(p, complexity(phi).length)) == 0
            assert f"[{inst.numeral_bound}]" in render_bound_instance(phi, p)
            assert check_bound_instance(phi, p)
    with pytest.raises(ValueError):
        bound_instance(parse("x = y"), 2)


def test_axiom_list_rejects_bad_base():
    with pytest.raises(ValueError):
        axiom_list(1)
