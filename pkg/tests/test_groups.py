import itertools

import pytest

from gsig.groups import (CapExceeded, GroupSpecError, HomomorphismError, abelianization,
                         build_group, commutator_subgroup, conjugacy_classes, double_coset,
                         double_cosets, identity_hom, make_homomorphism, subgroups,
                         verify_homomorphism)

from conftest import D4_SPEC, Q8_SPEC, S3_SPEC


def test_trivial_group():
    G = build_group("cyclic 1")
    assert G.order == 1
    assert G.mul(0, 0) == 0


def test_s3_classes():
    G = build_group(S3_SPEC)
    assert G.order == 6
    assert sorted(G.classes.sizes) == [1, 2, 3]
    assert len(G.classes.members[G.classes.class_of[G.element("a")]]) == 2


def test_c5c5_all_classes_singletons():
    G = build_group("abelian 5 5")
    assert G.order == 25
    assert all(s == 1 for s in G.classes.sizes)


def test_cayley_table_is_a_group():
    for spec in ("cyclic 6", "abelian 2 4", S3_SPEC, D4_SPEC, Q8_SPEC):
        G = build_group(spec)
        n = G.order
        assert all(G.mul(0, x) == x == G.mul(x, 0) for x in range(n))
        for x in range(n):
            assert sorted(G.mul(x, y) for y in range(n)) == list(range(n))
        for x, y, z in itertools.islice(itertools.product(range(n), repeat=3), 500):
            assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))


def test_classes_brute_force():
    for spec in ("cyclic 4", S3_SPEC, D4_SPEC, Q8_SPEC):
        G = build_group(spec)
        cc = conjugacy_classes(G)
        for x in range(G.order):
            orbit = {G.conj(g, x) for g in range(G.order)}
            assert set(cc.members[cc.class_of[x]]) == orbit
            assert cc.reps[cc.class_of[x]] == min(orbit)
            inv = G.power(x, -1)
            assert cc.inverse_class[cc.class_of[x]] == cc.class_of[inv]


def test_c4_square_class_is_self_inverse():
    G = build_group("cyclic 4")
    c = G.classes.class_of[G.element("x^2")]
    assert G.classes.inverse_class[c] == c


def test_commutator_subgroup_and_abelianization():
    assert len(commutator_subgroup(build_group("abelian 3 3"))) == 1
    S3 = build_group(S3_SPEC)
    assert len(commutator_subgroup(S3)) == 3
    Q8 = build_group(Q8_SPEC)
    assert Q8.order == 8
    assert tuple(abelianization(Q8)[0]) == (2, 2)
    brute = Q8.closure(Q8.commutator_of(a, b) for a in range(8) for b in range(8))
    assert set(commutator_subgroup(Q8)) == set(brute)


def test_subgroup_lists():
    assert sorted(c.order for c in subgroups(build_group("cyclic 6"))) == [1, 2, 3, 6]
    orders = sorted(c.order for c in subgroups(build_group("abelian 5 5"), "cyclic"))
    assert orders == [1] + [5] * 6
    assert sorted(c.order for c in subgroups(build_group(S3_SPEC))) == [1, 2, 3, 6]


def test_s3_subgroups_exhaustive():
    G = build_group(S3_SPEC)
    closed = set()
    for r in range(1, 7):
        for subset in itertools.combinations(range(6), r):
            if 0 in subset and G.is_subgroup(subset):
                closed.add(frozenset(subset))
    listed = {frozenset(m) for c in subgroups(G) for m in c.conjugates}
    assert listed == closed


def test_double_cosets_partition():
    G = build_group(S3_SPEC)
    C3 = G.closure([G.element("a")])
    C2 = G.closure([G.element("b")])
    assert double_cosets(G, G.closure(range(6)), G.closure(range(6))) == [0]
    for H, K in ((C3, C3), (C2, C2), (C3, C2)):
        reps = double_cosets(G, H, K)
        blocks = [double_coset(G, H, K, s) for s in reps]
        assert sum(len(b) for b in blocks) == 6
        assert set().union(*blocks) == set(range(6))


def test_homomorphisms():
    G = build_group(S3_SPEC)
    assert identity_hom(G).image == tuple(range(6))
    C3 = build_group("cyclic 3")
    i = make_homomorphism(C3, G, [G.element("a")])
    assert i.is_injective() and verify_homomorphism(i)
    C2, C4 = build_group("cyclic 2"), build_group("cyclic 4")
    f = make_homomorphism(C2, C4, [C4.element("x^2")])
    assert f.image == (0, 2)
    with pytest.raises(HomomorphismError):
        make_homomorphism(C3, C4, [C4.element("x")])


def test_spec_errors():
    with pytest.raises(GroupSpecError):
        build_group("dihedral 4")
    with pytest.raises(GroupSpecError):
        build_group("perm 3; (1 2 3), (1 2)")
    with pytest.raises(CapExceeded):
        build_group("cyclic 50", cap=20)
