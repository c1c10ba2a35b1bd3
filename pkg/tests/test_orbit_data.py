import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsig.groups import build_group, make_homomorphism
from gsig.orbit_data import (InvalidData, add, bg_structure, coordinates, data_from_json,
                             data_to_json, double_coset_check, empty, fixed_point_count,
                             format_data, from_coordinates, genus, lambda_power, make_data, neg,
                             parse_data, psi, pushforward, quotient_genus, realize, reduce,
                             restrict, restrict_abelian, restrict_raw)

from conftest import D4_SPEC, S3_SPEC, random_data

C12 = build_group("cyclic 12")


def entry_lists(G):
    return st.lists(st.tuples(st.integers(0, G.order - 1), st.integers(1, 3)), max_size=8)


def test_make_data_validity(C3, S3):
    assert not make_data(C3, [(1, 3)]).is_zero()
    assert make_data(S3, [(S3.element("a"), 1)]).size == 1
    with pytest.raises(InvalidData):
        make_data(C3, [(1, 1)])


def test_reduction_examples(C3, S3):
    assert reduce(parse_data(C3, "[x, (x^2)]")).is_zero()
    assert reduce(parse_data(S3, "[b, b]")).is_zero()
    assert reduce(parse_data(S3, "[a, a]")).is_zero()
    assert reduce(parse_data(S3, "[a, (a^2)]")).is_zero()
    assert reduce(parse_data(S3, "[a^3]")) == parse_data(S3, "[a]")


@settings(max_examples=100, deadline=None)
@given(entry_lists(C12), st.randoms(use_true_random=False))
def test_reduction_confluent_and_idempotent(entries, r):
    d = make_data(C12, entries, check=False)
    shuffled = make_data(C12, r.sample(entries, len(entries)), check=False)
    assert reduce(d) == reduce(shuffled)
    assert reduce(reduce(d)) == reduce(d)


def test_group_laws(rnd):
    for spec in ("cyclic 12", "abelian 3 3", S3_SPEC):
        G = build_group(spec)
        for _ in range(100):
            a, b, c = (random_data(G, rnd) for _ in range(3))
            assert add(add(a, b), c) == add(a, add(b, c))
            assert add(a, b) == add(b, a)
            assert add(a, empty(G)) == reduce(a)
            assert add(a, neg(a)).is_zero()


def test_lambda_action(C3, rnd):
    d = parse_data(C3, "[x^3]")
    assert lambda_power(2, d) == reduce(parse_data(C3, "[(x^2)^3]")) == neg(d)
    assert lambda_power(3, d).is_zero()
    for _ in range(30):
        e = random_data(C12, rnd)
        for n, m in ((5, 7), (5, 5), (7, 11)):
            assert lambda_power(n * m % 12, e) == lambda_power(n, lambda_power(m, e))
        assert lambda_power(13, e) == lambda_power(1, e) == reduce(e)


def test_pushforward(C3, S3):
    i = make_homomorphism(C3, S3, [S3.element("a")])
    assert pushforward(i, parse_data(C3, "[x^3]")) == parse_data(S3, "[a]")
    C4, C2 = build_group("cyclic 4"), build_group("cyclic 2")
    q = make_homomorphism(C4, C2, [C2.element("x")])
    d = parse_data(C4, "[x^2, (x^2)]")
    assert pushforward(q, d).is_zero()
    assert pushforward(q, d, reduced=False) == make_data(C2, [(0, 1), (1, 2)], check=False)


def test_restrict_examples(S3):
    d = parse_data(S3, "[a]")
    assert restrict(d, S3.closure(range(6))) == d
    C3 = S3.closure([S3.element("a")])
    assert restrict(d, C3).is_zero()
    raw = restrict_raw(d, C3)
    assert raw.size == 2  # [a, a^2] before reduction


def test_restrict_c9_matches_closed_formula():
    G = build_group("cyclic 9")
    K = G.closure([G.element("x^3")])
    d = parse_data(G, "[x^2, (x^7)]")
    assert restrict(d, K) == restrict_abelian(d, K)


def test_restrict_vs_closed_formula_exhaustive():
    rnd = random.Random(5)
    for spec in ("cyclic 12", "abelian 3 3"):
        G = build_group(spec)
        ks = [G.closure([g]) for g in range(G.order)]
        for _ in range(40):
            d = random_data(G, rnd)
            for K in ks:
                assert restrict(d, K) == restrict_abelian(d, K)


def test_double_coset_formula(rnd):
    S3 = build_group(S3_SPEC)
    C3, i3 = S3.subgroup_group(gens=[S3.element("a")])
    C2, i2 = S3.subgroup_group(gens=[S3.element("b")])
    assert double_coset_check(S3, i3, i2, parse_data(C3, "[a^3]"))
    for spec, gens_h, gens_k in (("cyclic 6", ["x^2"], ["x^3"]),
                                 ("abelian 3 3", ["x"], ["y"]),
                                 (D4_SPEC, ["a"], ["b"]),
                                 (D4_SPEC, ["b"], ["ab"])):
        G = build_group(spec)
        H, iH = G.subgroup_group(gens=[G.element(t) for t in gens_h])
        K, iK = G.subgroup_group(gens=[G.element(t) for t in gens_k])
        for _ in range(20):
            assert double_coset_check(G, iH, iK, random_data(H, rnd))
    G6, idG = S3.subgroup_group(gens=S3.generators)
    assert double_coset_check(S3, idG, idG, make_data(G6, [(idG.image.index(S3.element("a")), 1)]))


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7, 8, 9, 12, 15])
def test_bg_structure_cyclic(m):
    st_ = bg_structure(build_group(f"cyclic {m}"))
    want = (m - 1) // 2 if m % 2 else m // 2 - 1
    assert (st_.free_rank, st_.two_torsion) == (max(want, 0), 0)


def test_bg_small_examples(S3):
    V = build_group("abelian 2 2")
    st_ = bg_structure(V)
    assert (st_.free_rank, st_.two_torsion) == (0, 1)
    assert st_.basis[0] == reduce(parse_data(V, "[x, y, xy]"))
    assert (bg_structure(S3).free_rank, bg_structure(S3).two_torsion) == (0, 1)
    assert bg_structure(S3).basis[0] == parse_data(S3, "[a]")
    C5 = build_group("cyclic 5")
    st5 = bg_structure(C5)
    assert st5.describe() == "Z^2"
    assert all(not b.is_zero() and psi(b) == psi(empty(C5)) for b in st5.basis)


def test_torsion_only_from_ambivalent_classes():
    for spec in ("cyclic 6", "abelian 2 2", "abelian 2 4", S3_SPEC, D4_SPEC):
        G = build_group(spec)
        st_ = bg_structure(G)
        for i in range(st_.free_rank, len(st_.basis)):
            b = st_.basis[i]
            assert add(b, b).is_zero()
            assert all(G.classes.inverse_class[G.classes.class_of[x]] == G.classes.class_of[x]
                       for x in b.elements())


def test_coordinates_round_trip(rnd):
    C5 = build_group("cyclic 5")
    st5 = bg_structure(C5)
    assert coordinates(empty(C5), st5) == ([0, 0], [])
    for i, b in enumerate(st5.basis):
        assert coordinates(b, st5) == ([int(i == j) for j in range(2)], [])
    d = parse_data(C5, "[(x^2)^2, x]")
    free, tors = coordinates(d, st5)
    assert from_coordinates(st5, free, tors) == reduce(d)
    for spec in ("cyclic 12", "abelian 3 3", "abelian 2 4", D4_SPEC):
        G = build_group(spec)
        s = bg_structure(G)
        for _ in range(20):
            d = random_data(G, rnd)
            assert from_coordinates(s, *coordinates(d, s)) == reduce(d)


def test_genus_examples(S3):
    for spec in ("cyclic 5", S3_SPEC):
        G = build_group(spec)
        for h in range(1, 4):
            assert genus(empty(G), h) == 1 + G.order * (h - 1)
    assert genus(parse_data(S3, "[a]"), 1) == 3
    for n in range(2, 13):
        G = build_group(f"cyclic {n}")
        for i in range(1, n):
            d = make_data(G, [(i, 1), (n - i, 1)])
            for h in range(1, 4):
                assert genus(d, h) == h * n + 1 - gcd(n, i)


def test_quotient_genus_c4_to_c2():
    C4 = build_group("cyclic 4")
    d = parse_data(C4, "[x^2, (x^2)]")
    g = genus(d, 0)
    K = C4.closure([C4.element("x^2")])
    # the quotient of a genus-g surface by the rotation x^2 with 2*2 fixed points
    assert 2 * g - 2 == 2 * (2 * quotient_genus(d, g, K) - 2) + 4


def test_realize_examples(C3C3, S3):
    w = realize(empty(build_group("cyclic 4")))
    assert w.h == 1 and w.verify()
    w = realize(parse_data(S3, "[a]"))
    assert w.verify() and w.relation_holds() and w.is_surjective()
    w = realize(parse_data(C3C3, "[x, y, (x^2y^2)]"))
    assert w.verify() and w.h <= 3


def test_realize_basis_everywhere():
    for spec in ("cyclic 3", "cyclic 5", "cyclic 6", "cyclic 8", "abelian 2 2", "abelian 3 3",
                 S3_SPEC, D4_SPEC):
        G = build_group(spec)
        for b in bg_structure(G).basis:
            w = realize(b)
            assert w.verify()
            assert genus(b, w.h) >= 0


def test_fixed_points(S3):
    C5 = build_group("cyclic 5")
    free = empty(C5)
    assert all(fixed_point_count(free, y) == 0 for y in range(1, 5))
    d = parse_data(C5, "[x^2, (x^3)]")
    # x fixes the points of the two orbits whose stabilizer is all of C_5
    assert fixed_point_count(d, 1) == 3
    assert fixed_point_count(parse_data(S3, "[a]"), S3.element("a")) == 2
    assert fixed_point_count(parse_data(S3, "[a]"), S3.element("b")) == 0


def test_text_and_json_round_trip(rnd):
    for spec in ("cyclic 12", "abelian 3 3", S3_SPEC):
        G = build_group(spec)
        for _ in range(20):
            d = random_data(G, rnd)
            assert parse_data(G, format_data(d)) == d
            assert data_from_json(data_to_json(d), G) == d
            assert data_from_json(data_to_json(d)).mult == d.mult
