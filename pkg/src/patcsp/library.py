"""Named patterns: the tractable targets, the hard patterns and the gadgets
used by the class solvers.

For the three-variable targets ``v0`` is the shared (centre) variable and
``v1``/``v2`` the outer ones.
"""
from __future__ import annotations

from .model import Pattern, pair

C, I = True, False


def _make(points, compat=(), incompat=(), distinct_any=()):
    edges = {pair(p, q): C for p, q in compat}
    edges.update({pair(p, q): I for p, q in incompat})
    return Pattern(points, edges, distinct_any)


def _t1():
    return _make({"b": "v1", "e": "v0", "f": "v0", "c": "v2"},
                 compat=[("b", "f"), ("c", "f")],
                 incompat=[("b", "e"), ("c", "e")])


def _t2():
    return _make({"a": "v1", "b": "v1", "e": "v0", "f": "v0", "c": "v2"},
                 compat=[("a", "e"), ("a", "f"), ("c", "f")],
                 incompat=[("b", "e"), ("c", "e")])


def _t3():
    return _make({"a": "v1", "b": "v1", "e": "v0", "f": "v0", "c": "v2"},
                 compat=[("a", "e"), ("a", "f"), ("c", "e")],
                 incompat=[("b", "e"), ("c", "f")])


def _t4():
    return _make({"b": "v1", "e": "v0", "g": "v0", "f": "v0", "c": "v2"},
                 compat=[("b", "g"), ("c", "g"), ("b", "f")],
                 incompat=[("b", "e"), ("c", "f")])


def _t5():
    return _make({"b": "v1", "e": "v0", "f": "v0", "c": "v2"},
                 compat=[("c", "e"), ("b", "f")],
                 incompat=[("b", "e"), ("c", "f")])


def _one_i():
    return _make({"a": "v", "b": "w"}, incompat=[("a", "b")])


def _two_i():
    return _make({"a": "v0", "b": "v1", "c": "v2", "d": "v3"},
                 incompat=[("a", "b"), ("c", "d")])


def _z():
    return _make({"a": "v", "b": "v", "c": "w", "d": "w"},
                 compat=[("a", "c"), ("a", "d"), ("b", "c")],
                 incompat=[("b", "d")])


def _two_v():
    pts = {p: "v1" for p in "abc"}
    pts.update({p: "v2" for p in "def"})
    pts.update({p: "v0" for p in "ghijkl"})
    return _make(pts,
                 compat=[("a", "h"), ("b", "g"), ("b", "h"),
                         ("e", "k"), ("e", "l"), ("f", "l")],
                 incompat=[("c", "i"), ("d", "j")],
                 distinct_any=[[("a", "b"), ("g", "h")], [("e", "f"), ("k", "l")]])


def _vplus():
    return _make({"a": "v0", "b": "v1", "c": "v1"},
                 compat=[("a", "b"), ("a", "c")],
                 distinct_any=[[("b", "c")]])


def _vminus():
    return _make({"a": "v4", "b": "v5", "c": "v6"}, incompat=[("a", "b"), ("a", "c")])


def _x():
    return _make({"a": "v0", "b": "v0", "c": "v1", "d": "v1"},
                 compat=[("a", "d"), ("b", "c")],
                 incompat=[("a", "c"), ("b", "d")])


def _n_t2():
    return _make({"a": "v0", "b": "v0", "c": "v1", "d": "v1"},
                 compat=[("a", "d"), ("b", "d")],
                 incompat=[("b", "c")],
                 distinct_any=[[("a", "b")]])


def _n_t3():
    # ``x`` is the point of A_v0 that c is incompatible with.
    return _make({"a": "v0", "x": "v0", "b": "v1", "c": "v1"},
                 compat=[("a", "b"), ("a", "c")],
                 incompat=[("c", "x")],
                 distinct_any=[[("b", "c")]])


def _w():
    # ``x`` is the point of A_v1 that a is incompatible with.
    return _make({"a": "v0", "b": "v1", "c": "v1", "x": "v1"},
                 compat=[("a", "b"), ("a", "c")],
                 incompat=[("a", "x")],
                 distinct_any=[[("b", "c")]])


def _btp():
    return _make({"a": "x", "b": "y", "c": "z", "d": "z"},
                 compat=[("a", "b"), ("a", "c"), ("b", "d")],
                 incompat=[("a", "d"), ("b", "c")])


_BUILDERS = {
    "T1": _t1, "T2": _t2, "T3": _t3, "T4": _t4, "T5": _t5,
    "OneI": _one_i, "TwoI": _two_i, "Z": _z, "TwoV": _two_v,
    "Vplus": _vplus, "Vminus": _vminus, "X": _x,
    "N_T2": _n_t2, "N_T3": _n_t3, "W": _w, "BTP": _btp,
}

ALIASES = {"1I": "OneI", "2I": "TwoI", "2V": "TwoV", "V+": "Vplus", "V-": "Vminus"}

NAMES = tuple(_BUILDERS)
TRACTABLE_TARGETS = ("T1", "T2", "T3", "T4", "T5")
SOLVABLE_CLASSES = ("OneI", "TwoI", "T1", "T2", "T3", "T4", "T5")

_CACHE: dict = {}


def canonical_name(name: str) -> str:
    name = name.lstrip("$")
    name = ALIASES.get(name, name)
    if name not in _BUILDERS:
        raise KeyError(f"unknown pattern name {name!r}; known: {', '.join(NAMES)}")
    return name


def make_named(name: str) -> Pattern:
    name = canonical_name(name)
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]
