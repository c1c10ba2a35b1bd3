"""
Singular orbit data and the group B_G
=====================================

Build a few small groups, write down singular orbit data, reduce it and
read off the structure of B_G.
"""

from gsig.groups import build_group
from gsig.orbit_data import (add, bg_structure, coordinates, format_data, genus, neg,
                             parse_data, realize, reduce, restrict)

# a trailing ^m is a multiplicity: [x^2, (x^3)] means two orbits with generator x and one with x^3
C5 = build_group("cyclic 5")
d = parse_data(C5, "[x^2, (x^3)]")
e = parse_data(C5, "[x, (x^2)^2]")
print("d =", format_data(d), " e =", format_data(e))

# connected sum is addition; an orbit and its mirror image cancel
print("d + e =", format_data(add(d, e)))
print("d - d =", format_data(add(d, neg(d))))

# B_C5 is free of rank 2
st = bg_structure(C5)
print("B_C5 =", st.describe(), "basis", [format_data(b) for b in st.basis])
print("coordinates of d:", coordinates(d, st))

# S_3: the class of 3-cycles is self-inverse, so [a] has order two
S3 = build_group("perm 3; (1 2 3); (1 2)")
print("B_S3 =", bg_structure(S3).describe())
a = parse_data(S3, "[a]")
print("[a, a, a] reduces to", format_data(reduce(parse_data(S3, "[a^3]"))))

# restricting [a] to the rotation subgroup gives a cancelling pair
C3 = S3.closure([S3.element("a")])
print("res to <a>:", format_data(restrict(a, C3)))

# an explicit surface: generators for a genus-h quotient with one branch point
w = realize(a, trim=True)
print(f"realized with h = {w.h}, surface genus g = {genus(a, w.h)}, verified {w.verify()}")
