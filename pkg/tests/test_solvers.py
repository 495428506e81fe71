import random

import pytest

from oracles import brute_sat
from patcsp.fusion import FusionEvent
from patcsp.generators import ColouringGraph, coloring_to_z_free, noosat_shaped_instance
from patcsp.library import make_named
from patcsp.model import Instance, build_instance, is_solution
from patcsp.occurrence import occurs
from patcsp.solvers import (BudgetExceeded, PatternPresent, PointRemoval, StructureViolation,
                            domain_order, make_noosat, oracle_solve, solve, solve_1i, solve_noosat,
                            solve_t1, solve_t2, solve_t3, solve_t4, solve_t5, zoa_solve)


def _perm(v, w, mapping):
    return ((v, w), [(f"{v}{a}", f"{w}{b}") for a, b in mapping.items()])


def _doms(names, d=3):
    return {v: [f"{v}{i}" for i in range(d)] for v in names}


def _check(inst, name, want):
    assert occurs(make_named(name), inst) is None
    res = solve(inst, name)
    assert res.sat == want == brute_sat(inst)
    if res.sat:
        assert is_solution(inst, res.assignment)
    return res


# oracle

def test_oracle_examples():
    assert oracle_solve(Instance({})).sat
    assert not oracle_solve(build_instance({"v": ["1"], "w": ["2"]}, [(("v", "w"), [])])).sat
    k4 = coloring_to_z_free(ColouringGraph(4, frozenset(frozenset(e) for e in
                                                       [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])))
    assert not oracle_solve(k4).sat
    with pytest.raises(BudgetExceeded):
        oracle_solve(k4, node_budget=5)


# dispatcher and 1I / 2I

def test_dispatcher_refuses_present_pattern():
    inst = build_instance({"v": ["1", "2"], "w": ["3"]}, [(("v", "w"), [("1", "3")])])
    with pytest.raises(PatternPresent):
        solve(inst, "OneI", check_free=True)
    with pytest.raises(KeyError):
        solve(inst, "Z")


def test_one_i():
    triv = build_instance(_doms("xyz"))
    assert solve_1i(triv).sat
    with pytest.raises(StructureViolation):
        solve_1i(build_instance({"v": ["1", "2"], "w": ["3"]}, [(("v", "w"), [("1", "3")])]))


def test_two_i_star_and_triangle():
    star = build_instance(_doms("cxy", 2), [((("c", "x")), [("c0", "x0"), ("c1", "x1")]),
                                            ((("c", "y")), [("c0", "y1")])])
    _check(star, "TwoI", True)
    tri = build_instance(_doms("xyz", 2), [(("x", "y"), [("x0", "y0"), ("x1", "y1")]),
                                           (("y", "z"), [("y0", "z1"), ("y1", "z0")]),
                                           (("x", "z"), [("x0", "z0"), ("x1", "z1")])])
    assert occurs(make_named("TwoI"), tri) is None
    assert solve(tri, "TwoI").sat == brute_sat(tri)


# T1

def test_t1_staircase_fuses():
    d = 4
    doms = {"a": [f"a{i}" for i in range(1, d + 1)], "b": [f"b{j}" for j in range(1, d + 1)]}
    allowed = [(f"a{i}", f"b{j}") for i in range(1, d + 1) for j in range(1, d + 1) if i + j >= d + 1]
    inst = build_instance(doms, [(("a", "b"), allowed)])
    order = domain_order(inst, "a", "b")
    assert len(order.classes) == d
    res = _check(inst, "T1", True)
    assert res.trace  # the staircase is resolved by preprocessing or fusion


def test_t1_noosat_endgame_matches_oracle():
    seen = set()
    for seed in range(80):
        inst = noosat_shaped_instance(5, 3, 0.4, random.Random(seed))
        if occurs(make_named("T1"), inst) is not None:
            continue
        res = solve_t1(inst)
        assert res.sat == brute_sat(inst)
        seen.add(res.sat)
        if any(isinstance(e, FusionEvent) for e in res.trace):
            seen.add("fusion")
    assert {True, "fusion"} <= seen


def _three_clauses_two_vars(cover_all: bool):
    """F variables f, h, i each need e or g to take their own value; with
    only two E variables one of three clauses stays uncovered."""
    doms = {"e": ["e0", "e1", "e2"], "g": ["g0", "g1", "g2"]}
    conf = []
    fs = "fhi" if not cover_all else "fh"
    for k, F in enumerate(fs):
        doms[F] = [F + "0", F + "1"]
        conf += [(F + "0", f"e{j}") for j in range(3) if j != k]
        conf += [(F + "1", f"g{j}") for j in range(3) if j != k]
    return Instance(doms, conf)


def test_t1_noosat_matching_examples():
    _check(_three_clauses_two_vars(True), "T1", True)
    _check(_three_clauses_two_vars(False), "T1", False)


def test_noosat_examples():
    assert solve_noosat(make_noosat({"v": ["a", "b"]}, [])) is not None
    assert solve_noosat(make_noosat({"v": ["a", "b"]}, [[("v", "a")]])) == {"v": "a"}
    assert solve_noosat(make_noosat({"v": ["a", "b"]}, [[("v", "a")], [("v", "b")]])) is None
    with pytest.raises(ValueError):
        make_noosat({"v": ["a"]}, [[("v", "a")], [("v", "a")]])


# T2

def test_t2_equality_chain():
    ident = {i: i for i in range(3)}
    inst = build_instance(_doms("pqrs"), [_perm("p", "q", ident), _perm("q", "r", ident), _perm("r", "s", ident)])
    res = _check(inst, "T2", True)
    vals = {res.assignment[v][-1] for v in "pqrs"}
    assert len(vals) == 1


def test_t2_functional_loop_unsat():
    inst = build_instance(_doms("pqr", 2), [_perm("p", "q", {0: 0, 1: 1}), _perm("q", "r", {0: 0, 1: 1}),
                                            _perm("r", "p", {0: 1, 1: 0})])
    _check(inst, "T2", False)


# T3

def test_t3_bijection_triangles():
    ok = build_instance(_doms("pqr"), [_perm("p", "q", {0: 1, 1: 2, 2: 0}),
                                       _perm("q", "r", {0: 0, 1: 1, 2: 2}),
                                       _perm("p", "r", {0: 1, 1: 2, 2: 0})])
    _check(ok, "T3", True)
    bad = build_instance(_doms("pqr"), [_perm("p", "q", {0: 1, 1: 2, 2: 0}),
                                        _perm("q", "r", {0: 0, 1: 1, 2: 2}),
                                        _perm("p", "r", {0: 2, 1: 0, 2: 1})])
    _check(bad, "T3", False)


def test_t3_with_n_witness():
    # p0 supports q0 and q1 while p1 rejects q1: the gadget N occurs.
    inst = build_instance({"p": ["p0", "p1"], "q": ["q0", "q1"], "r": ["r0", "r1"]},
                          [(("p", "q"), [("p0", "q0"), ("p0", "q1"), ("p1", "q0")])])
    assert occurs(make_named("N_T3"), inst) is not None
    res = _check(inst, "T3", True)
    assert res.trace


# T4

def test_t4_examples():
    _check(build_instance(_doms("pqr")), "T4", True)
    cyc = build_instance(_doms("pqr", 2), [_perm("p", "q", {0: 0, 1: 1}), _perm("q", "r", {0: 0, 1: 1}),
                                           _perm("p", "r", {0: 1, 1: 0})])
    _check(cyc, "T4", False)


def test_zoa_solve_on_two_values():
    # x -> y, y -> not x, free z
    inst = Instance({"x": ["x+", "x-"], "y": ["y+", "y-"], "z": ["z+", "z-"]},
                    [("x+", "y-"), ("y+", "x+")])
    got = zoa_solve(inst)
    assert got is not None and is_solution(inst, got) and got["x"] == "x-"


# T5

def test_t5_examples():
    _check(build_instance(_doms("pqr")), "T5", True)
    wiped = build_instance({"v": ["1", "2"], "w": ["3", "4"]}, [(("v", "w"), [])])
    res = solve_t5(wiped)
    assert not res.sat


@pytest.mark.parametrize("name", ["OneI", "TwoI", "T1", "T2", "T3", "T4", "T5"])
def test_small_generated_batch(name):
    from patcsp.generators import random_pattern_free
    for seed in range(25):
        inst = random_pattern_free(name, 5, 3, 0.5, seed, family="structured" if seed % 2 else "uniform")
        res = solve(inst, name)
        assert res.sat == brute_sat(inst)
        if res.sat:
            assert is_solution(inst, res.assignment)


def test_point_removals_are_recorded():
    for seed in range(40):
        from patcsp.generators import random_pattern_free
        inst = random_pattern_free("T4", 6, 3, 0.6, seed, family="structured")
        res = solve_t4(inst)
        if any(isinstance(e, PointRemoval) for e in res.trace):
            assert res.sat == brute_sat(inst)
            return
    pytest.fail("no W witness in this sample")
