import random

from hypothesis import given, settings, strategies as st

from oracles import brute_occurs
from patcsp.generators import random_instance
from patcsp.library import make_named
from patcsp.model import Instance, Pattern, build_instance, pair
from patcsp.occurrence import occurs, pattern_isomorphic
from patcsp.reduction import merge_points


def _z_host():
    return build_instance({"v": ["v1", "v2"], "w": ["w1", "w2"]},
                          [(("v", "w"), [("v1", "w1"), ("v1", "w2"), ("v2", "w1")])])


def _r(s, t):
    doms = {"v": [f"v{u}" for u in (1, 2, 3)], "w": [f"w{u}" for u in (1, 2, 3)]}
    allowed = [(f"v{u}", f"w{x}") for u in (1, 2, 3) for x in (1, 2, 3)
               if (u == s and x == t) or (u != s and x != t)]
    return build_instance(doms, [(("v", "w"), allowed)])


def test_empty_pattern_occurs_everywhere():
    w = occurs(Pattern({}), _z_host())
    assert w is not None and w.point_map == {} and w.var_map == {}


def test_z_witness():
    z = make_named("Z")
    w = occurs(z, _z_host())
    assert w is not None and w.validate(z, _z_host())
    assert w.point_map == {"a": "v1", "b": "v2", "c": "w1", "d": "w2"}


def test_z_absent_from_every_r_relation():
    z = make_named("Z")
    for s in (1, 2, 3):
        for t in (1, 2, 3):
            assert occurs(z, _r(s, t)) is None


def test_isomorphism_examples():
    t4 = make_named("T4")
    ren = Pattern({p + "'": {"v0": "x", "v1": "y", "v2": "z"}[v] for p, v in t4.var_of.items()},
                  {pair(*(q + "'" for q in e)): lab for e, lab in t4.edges.items()})
    assert pattern_isomorphic(t4, ren)
    assert not pattern_isomorphic(make_named("T3"), t4)
    one = make_named("OneI")
    swapped = Pattern({"a": "w", "b": "v"}, {pair("a", "b"): False})
    assert pattern_isomorphic(one, swapped)


def test_instance_points_are_distinct_for_two_v():
    # One point per variable cannot host a disjunction.
    pts = {"c": "v", "x": "w"}
    inst = Instance({"v": ["c", "c2"], "w": ["x"]}, [("c", "x")])
    p = Pattern(pts, {pair("c", "x"): False})
    assert occurs(p, inst) is not None
    guarded = Pattern({"a": "v", "b": "v"}, distinct_any=[[("a", "b")]])
    assert occurs(guarded, Instance({"v": ["c"]})) is None
    assert occurs(guarded, inst) is not None


def test_pattern_target_distinct_only_when_forced():
    guarded = Pattern({"a": "v", "b": "v", "x": "w"},
                      {pair("a", "x"): True, pair("b", "x"): True},
                      distinct_any=[[("a", "b")]])
    loose = Pattern({"p": "v", "q": "v", "y": "w", "z": "u"},
                    {pair("p", "y"): True, pair("q", "y"): True})
    # p and q could coincide in some instance, so the guard is not met.
    assert occurs(guarded, loose) is None
    apart = Pattern({"p": "v", "q": "v", "y": "w", "z": "u"},
                    {pair("p", "y"): True, pair("q", "y"): True,
                     pair("p", "z"): True, pair("q", "z"): False})
    assert occurs(guarded, apart) is not None


def _random_pattern(rng):
    nv = rng.randint(1, 3)
    var_of = {}
    for i in range(rng.randint(1, 5)):
        var_of[f"p{i}"] = f"x{rng.randrange(nv)}"
    pts = list(var_of)
    edges = {}
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            if var_of[p] != var_of[q] and rng.random() < 0.5:
                edges[pair(p, q)] = rng.random() < 0.5
    return Pattern(var_of, edges)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_occurs_agrees_with_brute_force(seed):
    rng = random.Random(seed)
    pat = _random_pattern(rng)
    inst = random_instance(rng.randint(1, 4), 3, 0.7, rng)
    w = occurs(pat, inst)
    assert (w is not None) == brute_occurs(pat, inst)
    if w is not None:
        assert w.validate(pat, inst)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_occurs_in_own_extension_and_merge(seed):
    """Grow P by fresh edges and points, merge what can be merged: P still
    occurs in the result, and the result completed to an instance."""
    rng = random.Random(seed)
    pat = _random_pattern(rng)
    var_of = dict(pat.var_of)
    edges = dict(pat.edges)
    for k in range(rng.randint(0, 3)):
        var_of[f"n{k}"] = rng.choice(sorted(set(var_of.values())) + ["fresh"])
    pts = list(var_of)
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            e = pair(p, q)
            if var_of[p] != var_of[q] and e not in edges and rng.random() < 0.4:
                edges[e] = rng.random() < 0.5
    big = Pattern(var_of, edges)
    assert occurs(pat, big) is not None
    # complete every undefined cross pair as compatible
    full = Instance({v: [p for p in big.points if big.var_of[p] == v] for v in big.variables},
                    [tuple(e) for e, lab in big.edges.items() if not lab])
    assert occurs(pat, full) is not None
    same = [(a, b) for a in big.points for b in big.points
            if a < b and big.var_of[a] == big.var_of[b]]
    rng.shuffle(same)
    for a, b in same:
        try:
            merged = merge_points(big, a, b)
        except ValueError:
            continue
        assert occurs(pat, merged) is not None
        break


def test_occurs_is_reflexive_on_instances():
    rng = random.Random(3)
    for _ in range(20):
        inst = random_instance(4, 3, 0.6, rng)
        assert occurs(inst.as_pattern(), inst) is not None
