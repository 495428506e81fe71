# Patterns, instances and occurrence
#
# A pattern labels only some point pairs; an instance labels all of them.
# Occurrence lets pattern points of one variable land on the same instance
# point, which is how merging shows up operationally.
from patcsp import build_instance, make_named, occurs
from patcsp.io import pattern_to_dot

z = make_named("Z")
print(z)
print(pattern_to_dot(z, "Z"))

# The constraint {(1,1),(1,2),(2,1)} over {1,2}x{1,2} is exactly Z.
inst = build_instance({"v": ["v1", "v2"], "w": ["w1", "w2"]},
                      [(("v", "w"), [("v1", "w1"), ("v1", "w2"), ("v2", "w1")])])
w = occurs(z, inst)
print("Z occurs:", w.point_map)

# Adding the missing pair removes it.
full = build_instance(inst.domains, [(("v", "w"), [("v1", "w1"), ("v1", "w2"),
                                                    ("v2", "w1"), ("v2", "w2")])])
print("in the full relation:", occurs(z, full))

# T1 needs three variables; a triangle of "not equal" constraints on two
# colours is full of it.
neq = [("a", "b"), ("b", "c"), ("a", "c")]
tri = build_instance({v: [f"{v}0", f"{v}1"] for v in "abc"},
                     [((x, y), [(f"{x}0", f"{y}1"), (f"{x}1", f"{y}0")]) for x, y in neq])
print("T1 in the 2-colouring triangle:", occurs(make_named("T1"), tri))
