import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from patcsp.generators import random_instance
from patcsp.model import (Instance, ModelError, Pattern, build_instance, constraint_graph,
                          is_solution, pair, relations_of)


def _vw():
    return build_instance({"v": ["1", "2"], "w": ["3", "4"]}, [(("v", "w"), [("1", "3")])])


def test_unlisted_scope_is_trivial():
    inst = build_instance({"v": ["1", "2"], "w": ["3"]})
    assert inst.label("1", "3") is True and inst.label("2", "3") is True
    assert constraint_graph(inst) == set()


def test_allowed_complement_is_incompatible():
    inst = _vw()
    assert inst.incompatible_pairs() == {pair("1", "4"), pair("2", "3"), pair("2", "4")}
    assert constraint_graph(inst) == {("v", "w")}


def test_lemma6_style_relation():
    doms = {"v": ["v1", "v2", "v3"], "w": ["w1", "w2", "w3"]}
    allowed = [(f"v{u}", f"w{t}") for u in (1, 2, 3) for t in (1, 2, 3)
               if (u == 1 and t == 1) or (u != 1 and t != 1)]
    inst = build_instance(doms, [(("v", "w"), allowed)])
    got = {(p, q) for p in doms["v"] for q in doms["w"] if inst.compatible(p, q)}
    assert got == {("v1", "w1"), ("v2", "w2"), ("v2", "w3"), ("v3", "w2"), ("v3", "w3")}


@pytest.mark.parametrize("domains, relations", [
    ({"v": ["1"], "w": ["1"]}, []),
    ({"v": ["1"]}, [(("v", "v"), [])]),
    ({"v": ["1"], "w": ["2"]}, [(("v", "w"), [("1", "9")])]),
    ({"v": ["1"], "w": ["2"]}, [(("v", "x"), [])]),
])
def test_build_instance_errors(domains, relations):
    with pytest.raises(ModelError):
        build_instance(domains, relations)


def test_is_solution_examples():
    assert is_solution(build_instance({"v": ["1", "2"]}), {"v": "2"})
    inst = _vw()
    assert is_solution(inst, {"v": "1", "w": "3"})
    assert not is_solution(inst, {"v": "1", "w": "4"})
    with pytest.raises(ModelError):
        is_solution(inst, {"v": "1"})
    with pytest.raises(ModelError):
        is_solution(inst, {"v": "3", "w": "1"})


def test_empty_instance_is_satisfied_by_empty_assignment():
    assert is_solution(Instance({}), {})


def test_pattern_rejects_same_variable_edge():
    with pytest.raises(ModelError):
        Pattern({"a": "v", "b": "v"}, {pair("a", "b"): True})
    with pytest.raises(ModelError):
        Pattern({"a": "v", "b": "w"}, distinct_any=[[("a", "b")]])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_relations_round_trip(seed):
    inst = random_instance(5, 3, 0.6, random.Random(seed))
    assert build_instance(inst.domains, relations_of(inst)) == inst


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_every_cross_pair_has_exactly_one_label(seed):
    inst = random_instance(5, 3, 0.6, random.Random(seed))
    for p, q in combinations(inst.points, 2):
        lab = inst.label(p, q)
        if inst.var_of[p] == inst.var_of[q]:
            assert lab is None
        else:
            assert lab in (True, False)
            assert lab == inst.label(q, p)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_is_solution_matches_pairwise_scan(seed):
    rng = random.Random(seed)
    inst = random_instance(rng.randint(1, 6), 4, 0.7, rng)
    a = {v: rng.choice(inst.domains[v]) for v in inst.variables if inst.domains[v]}
    if len(a) != len(inst.variables):
        return
    want = all(q not in inst.conflicts[p] for p, q in combinations(a.values(), 2))
    assert is_solution(inst, a) == want
