"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored as its rational coefficient vector in the power basis
``1, z, ..., z^(phi(N)-1)`` after reduction modulo the N-th cyclotomic
polynomial, so equality is coefficient equality.  Elements of different
orders are compared and combined inside Q(zeta_lcm).
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(a: list, b: list) -> list:
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] // b[-1]
        q[i - db] = c
        if c:
            for j, bj in enumerate(b):
                a[i - db + j] -= c * bj
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _reduce(poly: list, n: int) -> tuple:
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    p = list(poly)
    for i in range(len(p) - 1, d - 1, -1):
        c = p[i]
        if c:
            # Phi is monic
            for j in range(d):
                if phi[j]:
                    p[i - d + j] -= c * phi[j]
            p[i] = 0
    p = p[:d] + [0] * (d - len(p))
    return tuple(Fraction(x) for x in p)


class Cyclotomic:
    """Element of Q(zeta_N)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise ValueError("order must be positive")
        coeffs = list(coeffs)
        if len(coeffs) != euler_phi(order):
            coeffs = list(_reduce(coeffs, order))
        self.order = order
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_poly(cls, order: int, poly) -> "Cyclotomic":
        """Reduce an arbitrary polynomial in ``z = zeta_order``."""
        return cls(order, _reduce(list(poly), order))

    @classmethod
    def rational(cls, q, order: int = 1) -> "Cyclotomic":
        return cls(order, [Fraction(q)] + [0] * (euler_phi(order) - 1))

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "Cyclotomic":
        k %= order
        poly = [0] * (k + 1)
        poly[k] = 1
        return cls.from_poly(order, poly)

    @classmethod
    def from_json(cls, obj) -> "Cyclotomic":
        if isinstance(obj, (int, str)):
            return cls.rational(Fraction(obj))
        return cls(int(obj["order"]), [Fraction(c) for c in obj["coeffs"]])

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    # -- coercions -------------------------------------------------------------

    def lift(self, order: int) -> "Cyclotomic":
        """Same number viewed in Q(zeta_order); ``self.order`` must divide ``order``."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed Q(zeta_{self.order}) in Q(zeta_{order})")
        step = order // self.order
        poly = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            poly[i * step] = c
        return Cyclotomic.from_poly(order, poly)

    def descend(self, order: int) -> "Cyclotomic":
        """Same number in the subfield Q(zeta_order); raises if it does not lie there."""
        if order == self.order:
            return self
        if self.order % order:
            raise ValueError(f"Q(zeta_{order}) is not a subfield of Q(zeta_{self.order})")
        basis = [list(Cyclotomic.zeta(order, k).lift(self.order).coeffs)
                 for k in range(euler_phi(order))]
        # solve c . basis = coeffs by elimination on the augmented transpose
        m, n = len(basis), len(self.coeffs)
        rows = [[basis[k][i] for k in range(m)] + [self.coeffs[i]] for i in range(n)]
        piv_cols = []
        r = 0
        for c in range(m):
            p = next((i for i in range(r, n) if rows[i][c]), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            pv = rows[r][c]
            rows[r] = [x / pv for x in rows[r]]
            for i in range(n):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            piv_cols.append(c)
            r += 1
        if any(rows[i][m] for i in range(r, n)):
            raise ValueError(f"{self} does not lie in Q(zeta_{order})")
        sol = [Fraction(0)] * m
        for i, c in enumerate(piv_cols):
            sol[c] = rows[i][m]
        return Cyclotomic(order, sol)

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            n = _lcm(self.order, other.order)
            return self.lift(n), other.lift(n)
        if isinstance(other, (int, Fraction)):
            return self, Cyclotomic.rational(other, self.order)
        return NotImplemented

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-x for x in self.coeffs])

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, [x * other for x in self.coeffs])
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        ca = [(i, x) for i, x in enumerate(a.coeffs) if x]
        cb = [(j, y) for j, y in enumerate(b.coeffs) if y]
        poly = [Fraction(0)] * (2 * len(a.coeffs))
        for i, x in ca:
            for j, y in cb:
                poly[i + j] += x * y
        return Cyclotomic.from_poly(a.order, poly)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, [x / other for x in self.coeffs])
        return NotImplemented

    def galois(self, a: int) -> "Cyclotomic":
        """Apply ``zeta -> zeta^a`` (``a`` prime to the order)."""
        n = self.order
        if gcd(a, n) != 1:
            raise ValueError("Galois exponent must be a unit")
        poly = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            poly[(a * i) % n] += c
        return Cyclotomic.from_poly(n, poly)

    def conj(self) -> "Cyclotomic":
        return self.galois(-1)

    # -- inspection ------------------------------------------------------------

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(complex(c) * z ** i for i, c in enumerate(self.coeffs))

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    __hash__ = None  # equal values of different orders would hash apart

    def __repr__(self):
        if self.is_rational():
            return str(self.rational_value())
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return f"({' + '.join(terms)})_{self.order}"
