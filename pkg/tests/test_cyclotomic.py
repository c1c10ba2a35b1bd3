import cmath
import random
from fractions import Fraction

import pytest

from gsig.cyclotomic import Cyclotomic, cyclotomic_poly, euler_phi


def rand_elt(rnd, n):
    return Cyclotomic.from_poly(n, [Fraction(rnd.randint(-5, 5), rnd.randint(1, 3))
                                    for _ in range(n)])


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert len(cyclotomic_poly(12)) - 1 == euler_phi(12) == 4


def test_arithmetic_matches_complex():
    rnd = random.Random(1)
    for n in (3, 4, 5, 8, 9, 12):
        for _ in range(10):
            a, b = rand_elt(rnd, n), rand_elt(rnd, n)
            za, zb = a.to_complex(), b.to_complex()
            assert abs((a + b).to_complex() - (za + zb)) < 1e-9
            assert abs((a * b).to_complex() - za * zb) < 1e-9
            assert abs(a.conj().to_complex() - za.conjugate()) < 1e-9
            assert abs((a / 3).to_complex() - za / 3) < 1e-9


def test_zeta_relations():
    z = Cyclotomic.zeta(5)
    total = Cyclotomic.rational(0, 5)
    for k in range(5):
        total = total + Cyclotomic.zeta(5, k)
    assert total.is_zero()
    assert (z * z.conj()) == Cyclotomic.rational(1, 5)
    assert abs(z.to_complex() - cmath.exp(2j * cmath.pi / 5)) < 1e-12


def test_conj_is_involution_and_mixed_orders():
    rnd = random.Random(2)
    a = rand_elt(rnd, 9)
    assert a.conj().conj() == a
    w = Cyclotomic.zeta(3) + Cyclotomic.zeta(4)
    assert abs(w.to_complex() - (cmath.exp(2j * cmath.pi / 3) + 1j)) < 1e-12


def test_descend():
    x = Cyclotomic.zeta(9, 3).lift(9)
    d = x.descend(3)
    assert d == Cyclotomic.zeta(3)
    assert d.order == 3
    with pytest.raises(ValueError):
        Cyclotomic.zeta(9).descend(3)


def test_rational_value():
    q = Cyclotomic.zeta(7) + Cyclotomic.zeta(7).conj()
    assert not q.is_rational()
    s = Cyclotomic.rational(0, 7)
    for k in range(1, 7):
        s = s + Cyclotomic.zeta(7, k)
    assert s.is_rational() and s.rational_value() == -1
