import cmath
import random
from math import gcd

import pytest

from gsig.characters import (MissingTable, action_character, char_table, cyclic_multiplicities,
                             induce, inner, multiplicities, perm_character, rational_lattice_check,
                             regular_character, restrict_cf, trivial_character)
from gsig.cyclotomic import Cyclotomic
from gsig.groups import build_group
from gsig.orbit_data import (bg_structure, empty, fixed_point_count, genus, make_data,
                             parse_data, realize)

from conftest import D4_SPEC, S3_SPEC, random_data


def eichler_trace(n, exps, h, j):
    """Trace of x^j on holomorphic one-forms by the Eichler trace formula."""
    g = 1 + n * (h - 1) + sum(n / 2 * (1 - gcd(n, i) / n) for i in exps)
    if j % n == 0:
        return g
    tot = 1
    for i in exps:
        k = gcd(n, i)
        m = n // k
        if j % k:
            continue
        t = next(t for t in range(m) if (i * t - j) % n == 0)
        z = cmath.exp(2j * cmath.pi * t / m)
        tot += k * z / (1 - z)
    return tot


def test_tables():
    C3 = build_group("cyclic 3")
    t = char_table(C3)
    assert len(t) == 3 and t.degrees == (1, 1, 1)
    for j in range(3):
        assert t[j].at(C3.element("x")) == Cyclotomic.zeta(3, j)
    S3 = build_group(S3_SPEC)
    assert char_table(S3).degrees == (1, 1, 2)
    V = build_group("abelian 2 2")
    assert char_table(V).conj_perm == (0, 1, 2, 3)
    with pytest.raises(MissingTable):
        char_table(build_group(D4_SPEC))


def test_free_action_multiplicities():
    for n in range(4, 13):
        for h in range(1, 4):
            want = (h,) + (h - 1,) * (n - 1)
            assert cyclic_multiplicities(n, [], h).coeffs == want


def test_cancelling_pair_multiplicities():
    for n in range(4, 13):
        for i in range(1, n):
            k = gcd(n, i)
            for h in range(0, 3):
                got = cyclic_multiplicities(n, [i, n - i], h).coeffs
                # h copies of the regular rep, plus trivial, minus the
                # permutation rep on C_n / C_{n/k}
                want = tuple(h + (j == 0) - (j % (n // k) == 0) for j in range(n))
                assert got == want
                assert sum(got) == h * n + 1 - k


def test_hand_example_c5():
    mv = cyclic_multiplicities(5, [1, 1, 3], 0)
    assert mv.coeffs == (0, 1, 1, 0, 0)
    assert sum(mv.coeffs) == 2


def test_multiplicity_formula_against_trace_formula():
    rnd = random.Random(0)
    checked = 0
    while checked < 150:
        n = rnd.randint(2, 12)
        exps = [rnd.randrange(1, n) for _ in range(rnd.randint(0, 5))]
        if sum(exps) % n:
            continue
        h = rnd.randint(0, 2)
        if 1 + n * (h - 1) + sum(n - gcd(n, i) for i in exps) / 2 < 0:
            continue
        mv = cyclic_multiplicities(n, exps, h).coeffs
        for j in range(n):
            tr = sum(c * cmath.exp(2j * cmath.pi * k * j / n) for k, c in enumerate(mv))
            assert abs(tr - eichler_trace(n, exps, h, j)) < 1e-8
        checked += 1


def test_free_c2_action_character():
    C2 = build_group("cyclic 2")
    d = empty(C2)
    w = realize(d, extra_handles=1)
    assert w.h == 2 and genus(d, 2) == 3
    f = action_character(d, w)
    # twice the trivial character plus the sign character; x has no fixed points
    assert [v.rational_value() for v in f.values] == [3, 1]
    assert multiplicities(f, char_table(C2)).coeffs == (2, 1)
    assert f.at(1) + f.at(1).conj() == Cyclotomic.rational(2 - fixed_point_count(d, 1), 1)


def test_s3_action_character():
    S3 = build_group(S3_SPEC)
    d = parse_data(S3, "[a]")
    w = realize(d, trim=True)
    assert w.h == 1 and genus(d, 1) == 3
    f = action_character(d, w)
    assert [v.rational_value() for v in f.values] == [3, 0, 1]
    assert multiplicities(f, char_table(S3)).coeffs == (1, 0, 1)


def test_lefschetz_identity(rnd):
    for spec in ("cyclic 5", "cyclic 6", "abelian 3 3", S3_SPEC):
        G = build_group(spec)
        for _ in range(8):
            d = random_data(G, rnd)
            w = realize(d)
            f = action_character(d, w)
            for y in range(1, G.order):
                val = f.at(y) + f.at(y).conj()
                assert val == Cyclotomic.rational(2 - fixed_point_count(d, y), 1)


def test_action_character_affine_in_genus(rnd):
    G = build_group("cyclic 6")
    t = char_table(G)
    for _ in range(5):
        d = random_data(G, rnd)
        w0 = realize(d)
        w1 = realize(d, extra_handles=1)
        diff = [a - b for a, b in zip(multiplicities(action_character(d, w1), t).coeffs,
                                      multiplicities(action_character(d, w0), t).coeffs)]
        assert diff == [w1.h - w0.h] * 6


def test_regular_and_permutation_characters():
    for spec in ("cyclic 6", "abelian 3 3", S3_SPEC):
        G = build_group(spec)
        t = char_table(G)
        assert multiplicities(regular_character(G), t).coeffs == t.degrees
        assert perm_character(G, G.closure(range(G.order)), t).coeffs == (1,) + (0,) * (len(t) - 1)
        assert perm_character(G, G.closure([]), t).coeffs == t.degrees
    S3 = build_group(S3_SPEC)
    assert perm_character(S3, S3.closure([S3.element("a")]), char_table(S3)).coeffs == (1, 1, 0)
    C6 = build_group("cyclic 6")
    # C_6 / C_2: characters trivial on x^3
    assert perm_character(C6, C6.closure([3]), char_table(C6)).coeffs == (1, 0, 1, 0, 1, 0)


def test_frobenius_reciprocity():
    rnd = random.Random(4)
    cases = 0
    for spec, gen in (("cyclic 12", "x^3"), ("abelian 3 3", "x"), (S3_SPEC, "a"), (S3_SPEC, "b")):
        G = build_group(spec)
        H, inc = G.subgroup_group(gens=[G.element(gen)])
        tG, tH = char_table(G), char_table(H)
        for _ in range(13):
            a = tG.combine([rnd.randint(-2, 2) for _ in range(len(tG))])
            b = tH.combine([rnd.randint(-2, 2) for _ in range(len(tH))])
            assert inner(induce(b, inc), a) == inner(b, restrict_cf(a, inc))
            cases += 1
    assert cases >= 50


def test_trivial_character_inner():
    G = build_group(S3_SPEC)
    assert inner(trivial_character(G), trivial_character(G)) == Cyclotomic.rational(1, 1)


@pytest.mark.parametrize("n", [1, 2, 6, 12, 30])
def test_rational_lattice(n):
    assert rational_lattice_check(n)


def test_rational_lattice_all_up_to_30():
    assert all(rational_lattice_check(n) for n in range(1, 31))
