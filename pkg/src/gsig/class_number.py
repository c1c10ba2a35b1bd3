"""Relative class number h_p^- of the p-th cyclotomic field.

Two independent formulas are implemented: the Maillet determinant and the
product of generalized Bernoulli numbers over odd Dirichlet characters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import Cyclotomic
from .zlattice import det

MAX_PRIME = 200


class ClassNumberError(ValueError):
    pass


@dataclass(frozen=True)
class ClassNumberResult:
    p: int
    h_minus: int
    methods: tuple

    def to_json(self) -> dict:
        return {"p": self.p, "h_minus": self.h_minus, "methods": list(self.methods)}


def _check_prime(p: int):
    if p < 3 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
        raise ClassNumberError(f"{p} is not an odd prime")
    if p > MAX_PRIME:
        raise ClassNumberError(f"p = {p} exceeds {MAX_PRIME}")


def primitive_root(p: int) -> int:
    """Least generator of ``(Z/p)^*``."""
    n = p - 1
    factors = [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]
    for g in range(2, p):
        if all(pow(g, n // q, p) != 1 for q in factors):
            return g
    return 1  # p == 2 never reaches here


def h_minus_maillet(p: int) -> int:
    _check_prime(p)
    m = (p - 1) // 2
    M = [[(a * pow(b, -1, p)) % p for b in range(1, m + 1)] for a in range(1, m + 1)]
    D = abs(det(M))
    scale = p ** ((p - 3) // 2)
    if D % scale:
        raise AssertionError("Maillet determinant is not divisible by the expected p-power")
    return D // scale


def h_minus_bernoulli(p: int) -> int:
    _check_prime(p)
    n = p - 1
    g = primitive_root(p)
    # discrete logarithm base g
    log = {}
    x = 1
    for k in range(n):
        log[x] = k
        x = x * g % p
    prod = Cyclotomic.rational(1, n)
    # chi_j(g) = zeta_n^j is odd iff j is odd
    for j in range(1, n, 2):
        poly = [Fraction(0)] * n
        for a in range(1, p):
            poly[(j * log[a]) % n] += a
        b1 = Cyclotomic.from_poly(n, poly) / p
        prod = prod * (b1 * Fraction(-1, 2))
    val = prod * (2 * p)
    if not val.is_rational() or val.rational_value().denominator != 1:
        raise AssertionError("Bernoulli product is not a rational integer")
    return abs(int(val.rational_value()))


def h_minus(p: int, methods=("maillet", "bernoulli")) -> ClassNumberResult:
    vals = {}
    for m in methods:
        if m == "maillet":
            vals[m] = h_minus_maillet(p)
        elif m == "bernoulli":
            vals[m] = h_minus_bernoulli(p)
        else:
            raise ClassNumberError(f"unknown method {m!r}")
    distinct = set(vals.values())
    if len(distinct) != 1:
        raise AssertionError(f"class number oracles disagree: {vals}")
    return ClassNumberResult(p, distinct.pop(), tuple(methods))
