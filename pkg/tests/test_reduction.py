import pytest

from patcsp.library import NAMES, TRACTABLE_TARGETS, make_named
from patcsp.model import ModelError, Pattern, pair
from patcsp.reduction import (NOT_REDUCIBLE, REACHES_2V, REACHES_Z, TWO_INCOMPAT,
                              UnsupportedPattern, classify, eliminate_dangling_points,
                              enumerate_two_constraint_patterns, intractability_reason,
                              merge_points, reduces_to, remove_point)


def replay(pattern, steps):
    for s in steps:
        if s[0] == "merge":
            pattern = merge_points(pattern, s[1], s[2])
        else:
            pattern = remove_point(pattern, s[1])
    return pattern


def test_library_shapes():
    one = make_named("OneI")
    assert len(one.points) == 2 and list(one.edges.values()) == [False]
    two_v = make_named("2V")
    assert len(two_v.points) == 12
    assert sorted(two_v.edges.values()).count(True) == 6
    assert sorted(two_v.edges.values()).count(False) == 2
    assert len(two_v.distinct_any) == 2
    t5 = make_named("T5")
    assert sorted(t5.edges.values()) == [False, False, True, True]
    with pytest.raises(KeyError):
        make_named("T9")


def test_merge_examples():
    p = Pattern({"a": "v", "b": "v"})
    assert merge_points(p, "a", "b").points == ("a",)
    with pytest.raises(ModelError):
        merge_points(make_named("Z"), "c", "d")
    with pytest.raises(ModelError):
        merge_points(make_named("Vplus"), "b", "c")


def test_dangling_examples():
    p = Pattern({"a": "v", "b": "w"}, {pair("a", "b"): True})
    assert eliminate_dangling_points(p).points == ()
    one = make_named("OneI")
    assert eliminate_dangling_points(one) == one
    t2 = make_named("T2")
    assert eliminate_dangling_points(t2) == t2


def test_reduces_to_examples():
    t4 = make_named("T4")
    tr = reduces_to(t4, t4)
    assert tr is not None and tr.steps == ()
    no_incompat = Pattern({"a": "v", "b": "w", "c": "w"}, {pair("a", "b"): True, pair("a", "c"): True})
    assert reduces_to(no_incompat, make_named("OneI")) is not None
    assert reduces_to(make_named("T5"), t4) is None


def test_mutual_irreducibility():
    for a in TRACTABLE_TARGETS:
        for b in TRACTABLE_TARGETS:
            got = reduces_to(make_named(a), make_named(b))
            assert (got is not None) == (a == b), (a, b)


@pytest.mark.parametrize("name", TRACTABLE_TARGETS)
def test_targets_classify_as_themselves(name):
    c = classify(make_named(name))
    assert c.tractable and c.target == name


def test_hard_patterns():
    assert classify(make_named("Z")).reason == REACHES_Z
    two_v = make_named("TwoV")
    assert len(two_v.constraints()) == 2
    assert str(classify(two_v)) == f"Intractable({REACHES_2V})"
    two = Pattern({"a": "v", "b": "v", "c": "w", "d": "w", "x": "w"},
                  {pair("a", "c"): False, pair("b", "d"): False, pair("a", "x"): True,
                   pair("b", "x"): False, pair("c", "b"): True})
    assert classify(two).reason == TWO_INCOMPAT


def test_one_and_two_i():
    assert classify(make_named("OneI")).target == "OneI"
    assert classify(make_named("TwoI")).target == "TwoI"


def test_three_constraints_unsupported():
    p = Pattern({"a": "x", "b": "y", "c": "z"},
                {pair("a", "b"): False, pair("b", "c"): False, pair("a", "c"): False})
    with pytest.raises(UnsupportedPattern):
        classify(p)


def test_library_coherence():
    """If P reduces to Q and Q is tractable, P is tractable."""
    small = [n for n in NAMES if len(make_named(n).constraints()) <= 2]
    verdict = {n: classify(make_named(n)) for n in small}
    for p in small:
        for q in small:
            if verdict[q].tractable and reduces_to(make_named(p), make_named(q)) is not None:
                assert verdict[p].tractable, (p, q)


def test_trace_replays_for_small_enumeration():
    pats = enumerate_two_constraint_patterns(max_center=2, max_outer=2)
    assert len(pats) > 100
    for p in pats:
        c = classify(p)
        if c.tractable:
            form = replay(p, c.trace.steps)
            assert c.trace.witness.validate(form, make_named(c.target))
            assert intractability_reason(p) is None
        else:
            assert c.reason != NOT_REDUCIBLE or intractability_reason(p) is None
