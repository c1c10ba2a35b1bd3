"""
G-signatures and the relative class number
==========================================

The signature map sends orbit data to a class of virtual characters.  For a
cyclic group of prime order p the image has finite index in its target, and
that index equals the relative class number of Q(zeta_p).
"""

from gsig.characters import action_character, char_table, multiplicities
from gsig.class_number import h_minus
from gsig.groups import build_group
from gsig.orbit_data import parse_data, realize
from gsig.signature import cp_report, cpcp_report, dprime, setup

# the action character on holomorphic one-forms, for S_3 acting with one orbit of 3-cycles
S3 = build_group("perm 3; (1 2 3); (1 2)")
d = parse_data(S3, "[a]")
w = realize(d, trim=True)
phi = multiplicities(action_character(d, w), char_table(S3))
print("phi =", dict(zip(phi.table.names, phi.coeffs)))

# modulo all permutation characters theta([a]) vanishes, modulo a smaller lattice it does not
print("theta mod E:", setup(S3).theta(d))
print("theta mod D':", setup(S3, dprime(S3)).theta(d))

# index against the class number, prime by prime
for p in (3, 5, 7, 11, 13, 23):
    rep = cp_report(p)
    print(f"p = {p:2d}: index {rep.index}, h^- = {h_minus(p).h_minus}")

# C_3 x C_3: the induced images have index 9 in A_G
rep = cpcp_report(3)
print("C_3 x C_3:", {k: rep.aux[k] for k in ("delta", "bg_subindex", "ag_subindex", "k")})
