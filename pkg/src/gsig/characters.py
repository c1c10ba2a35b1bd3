"""Characters of finite groups with exact cyclotomic values.

Class functions carry one :class:`Cyclotomic` per conjugacy class, all living
in ``Q(zeta_N)`` with ``N`` the group exponent.  Character tables come from the
dual group (abelian case), a built-in table for the symmetric group on three
letters, or a user JSON file.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .cyclotomic import Cyclotomic, euler_phi
from .groups import FiniteGroup, GroupError, Homomorphism
from .orbit_data import OrbitData, RealizationWitness, genus, quotient_genus, restrict_raw
from .zlattice import LatticeBasis


class CharacterError(ValueError):
    pass


class MissingTable(CharacterError):
    """No character table is known for a nonabelian group."""


class ClassFunction:
    """Values of a class function, one cyclotomic per conjugacy class."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteGroup, values: Sequence):
        if len(values) != len(group.classes):
            raise CharacterError("one value per conjugacy class expected")
        N = group.exponent
        vals = []
        for v in values:
            if not isinstance(v, Cyclotomic):
                v = Cyclotomic.rational(v)
            if N % v.order:
                try:
                    v = v.descend(gcd(N, v.order))
                except ValueError:
                    raise CharacterError(f"value {v} does not lie in Q(zeta_{N})") from None
            vals.append(v.lift(N))
        self.group = group
        self.values = tuple(vals)

    def __getitem__(self, c: int) -> Cyclotomic:
        return self.values[c]

    def at(self, x: int) -> Cyclotomic:
        """Value at element id ``x``."""
        return self.values[self.group.classes.class_of[x]]

    @property
    def degree(self) -> Cyclotomic:
        return self.values[0]

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        _same(self, other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        _same(self, other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return ClassFunction(self.group, [-a for a in self.values])

    def __mul__(self, k):
        if isinstance(k, ClassFunction):
            _same(self, k)
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, k.values)])
        return ClassFunction(self.group, [a * k for a in self.values])

    __rmul__ = __mul__

    def conj(self) -> "ClassFunction":
        return ClassFunction(self.group, [a.conj() for a in self.values])

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group is other.group and all(a == b for a, b in zip(self.values, other.values))

    __hash__ = None

    def to_complex(self) -> list[complex]:
        return [v.to_complex() for v in self.values]

    def __repr__(self):
        return f"ClassFunction({list(self.values)})"


def _same(f: ClassFunction, g: ClassFunction):
    if f.group is not g.group:
        raise CharacterError("class functions over different groups")


def inner(f: ClassFunction, g: ClassFunction) -> Cyclotomic:
    """``(1/|G|) sum_C |C| f(C) conj(g(C))``."""
    _same(f, g)
    G = f.group
    acc = Cyclotomic.rational(0, G.exponent)
    for size, a, b in zip(G.classes.sizes, f.values, g.values):
        if not a.is_zero() and not b.is_zero():
            acc = acc + a * b.conj() * size
    return acc / G.order


def regular_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, [G.order] + [0] * (len(G.classes) - 1))


def trivial_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, [1] * len(G.classes))


@dataclass(frozen=True)
class MultiplicityVector:
    table: "CharacterTable | None"
    coeffs: tuple

    def __add__(self, other):
        return MultiplicityVector(self.table, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return MultiplicityVector(self.table, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def character(self) -> ClassFunction:
        if self.table is None:
            raise CharacterError("multiplicity vector has no table attached")
        return self.table.combine(self.coeffs)


class CharacterTable:
    """Irreducible characters of ``group`` plus the complex-conjugation pairing.

    For tables built from the dual group ``root_exps[i][c]`` holds ``e`` with
    ``chi_i(C_c) = zeta_N^e``; it speeds up inner products and is ``None``
    otherwise.
    """

    def __init__(self, group: FiniteGroup, irreducibles: Sequence[ClassFunction],
                 names: Sequence[str] | None = None, root_exps=None, validate: bool = True):
        self.group = group
        self.irreducibles = tuple(irreducibles)
        self.names = tuple(names) if names else tuple(f"chi_{i}" for i in range(len(irreducibles)))
        self.root_exps = root_exps
        if validate:
            self.validate()
        self.conj_perm = self._conj_perm()

    def __len__(self):
        return len(self.irreducibles)

    def __getitem__(self, i) -> ClassFunction:
        return self.irreducibles[i]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(chi.degree.rational_value()) for chi in self.irreducibles)

    def validate(self):
        G = self.group
        if len(self.irreducibles) != len(G.classes):
            raise CharacterError("number of irreducibles differs from number of classes")
        for chi in self.irreducibles:
            if chi.group is not G:
                raise CharacterError("character over a different group")
            d = chi.degree
            if not d.is_rational() or d.rational_value() <= 0 or d.rational_value().denominator != 1:
                raise CharacterError("degrees must be positive integers")
        if sum(d * d for d in self.degrees) != G.order:
            raise CharacterError("sum of squared degrees differs from the group order")
        for i, chi in enumerate(self.irreducibles):
            for j in range(i, len(self.irreducibles)):
                ip = self.multiplicity(self.irreducibles[j], i)
                if ip != (1 if i == j else 0):
                    raise CharacterError(f"rows {i} and {j} are not orthonormal")

    def _conj_perm(self) -> tuple[int, ...]:
        if self.root_exps is not None:
            N = self.group.exponent
            where = {e: i for i, e in enumerate(self.root_exps)}
            return tuple(where[tuple((-x) % N for x in e)] for e in self.root_exps)
        perm = []
        for chi in self.irreducibles:
            cc = chi.conj()
            matches = [j for j, psi in enumerate(self.irreducibles) if psi == cc]
            if len(matches) != 1:
                raise CharacterError("table is not closed under complex conjugation")
            perm.append(matches[0])
        return tuple(perm)

    def combine(self, coeffs: Sequence[int]) -> ClassFunction:
        G = self.group
        vals = [Cyclotomic.rational(0, G.exponent)] * len(G.classes)
        for k, chi in zip(coeffs, self.irreducibles):
            if k:
                vals = [a + b * k for a, b in zip(vals, chi.values)]
        return ClassFunction(G, vals)

    def multiplicity(self, f: ClassFunction, i: int) -> Fraction:
        """``<f, chi_i>`` as a rational (must be one)."""
        G = self.group
        if self.root_exps is None:
            v = inner(f, self.irreducibles[i])
        else:
            # chi_i is a root of unity on every class: shift instead of multiply
            N = G.exponent
            acc = [Fraction(0)] * N
            for c, (size, a) in enumerate(zip(G.classes.sizes, f.values)):
                e = self.root_exps[i][c]
                for k, x in enumerate(a.coeffs):
                    if x:
                        acc[(k - e) % N] += size * x
            v = Cyclotomic.from_poly(N, acc) / G.order
        if not v.is_rational():
            raise CharacterError("inner product with a character is not rational")
        return v.rational_value()

    def __repr__(self):
        return f"CharacterTable({self.group!r}, degrees={self.degrees})"


# ---------------------------------------------------------------------------
# table construction
# ---------------------------------------------------------------------------

def _abelian_coordinates(G: FiniteGroup):
    """Moduli and coordinate map ``id -> exponent vector`` for abelian G.

    Uses the group's own generators when G is their direct product, otherwise
    the invariant factors of the abelianization.
    """
    gens = G.generators
    mods = [G.elt_order[g] for g in gens]
    total = 1
    for m in mods:
        total *= m
    if gens and total == G.order:
        coords = {}
        for e in itertools.product(*[range(m) for m in mods]):
            x = 0
            for g, a in zip(gens, e):
                x = G.mul(x, G.power(g, a))
            coords[x] = e
        if len(coords) == G.order:
            return mods, [coords[x] for x in range(G.order)]
    return list(G.ab_factors), [tuple(v) for v in G.ab_projection]


def _abelian_table(G: FiniteGroup) -> CharacterTable:
    N = G.exponent
    mods, coords = _abelian_coordinates(G)
    reps = G.classes.reps
    chars, names, exps_all = [], [], []
    for e in itertools.product(*[range(m) for m in mods]):
        exps = []
        for r in reps:
            v = coords[r]
            exps.append(sum(a * b * (N // m) for a, b, m in zip(e, v, mods)) % N)
        chars.append(ClassFunction(G, [Cyclotomic.zeta(N, k) for k in exps]))
        exps_all.append(tuple(exps))
        names.append("rho_" + ("_".join(map(str, e)) if e else "0"))
    return CharacterTable(G, chars, names, root_exps=tuple(exps_all))


def _s3_table(G: FiniteGroup) -> CharacterTable:
    reps = G.classes.reps
    orders = [G.elt_order[r] for r in reps]
    if sorted(orders) != [1, 2, 3]:
        raise MissingTable("group of order 6 is not the symmetric group")
    val = {1: (1, 1, 2), 3: (1, 1, -1), 2: (1, -1, 0)}
    chars = [ClassFunction(G, [val[o][i] for o in orders]) for i in range(3)]
    return CharacterTable(G, chars, ["chi_0", "chi_1", "chi_2"])


def load_table(G: FiniteGroup, source) -> CharacterTable:
    """Read a user table: ``{"order", "classes": [rep ids], "irreducibles": [[value...]...]}``.

    Values are integers, rational strings, or ``{"order": N, "coeffs": [...]}``.
    """
    if isinstance(source, str):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError:
            with open(source) as fh:
                obj = json.load(fh)
    elif hasattr(source, "read"):
        obj = json.load(source)
    else:
        obj = source
    if int(obj["order"]) != G.order:
        raise CharacterError("table order differs from the group order")
    cols = [G.classes.class_of[int(r)] for r in obj["classes"]]
    if sorted(cols) != list(range(len(G.classes))):
        raise CharacterError("table classes do not match the conjugacy classes")
    chars = []
    for row in obj["irreducibles"]:
        if len(row) != len(cols):
            raise CharacterError("table row has the wrong length")
        vals = [None] * len(cols)
        for c, v in zip(cols, row):
            vals[c] = Cyclotomic.from_json(v)
        chars.append(ClassFunction(G, vals))
    return CharacterTable(G, chars, obj.get("names"))


def char_table(G: FiniteGroup, table_file=None) -> CharacterTable:
    if table_file is not None:
        return load_table(G, table_file)
    if G.is_abelian:
        return _abelian_table(G)
    if G.order == 6:
        return _s3_table(G)
    raise MissingTable(f"no character table for nonabelian {G!r}; supply a table file")


# ---------------------------------------------------------------------------
# multiplicity formula for cyclic groups
# ---------------------------------------------------------------------------

def cyclic_multiplicities(n: int, exps: Sequence[int], h: int,
                          table: CharacterTable | None = None) -> MultiplicityVector:
    """Multiplicity of each ``rho_j`` (``rho_j(x) = zeta_n^j``) in the action character.

    ``exps`` lists the exponents ``i_s`` with ``x^{i_s}`` the canonical
    rotation generators at the singular orbits; ``h`` is the quotient genus
    (any integer, giving virtual characters when negative).
    """
    exps = [int(i) % n for i in exps]
    if any(i == 0 for i in exps):
        raise CharacterError("stabilizer exponent is divisible by n")
    q = len(exps)
    ks = [gcd(n, i) for i in exps]
    ls = [i // k for i, k in zip(exps, ks)]
    out = [h]
    for j in range(1, n):
        tot = 0
        for k, l in zip(ks, ls):
            m = n // k
            r = (j * l) % m or m
            tot += k * r
        val = Fraction(h - 1 + q) - Fraction(tot, n)
        if val.denominator != 1:
            raise CharacterError("multiplicity formula gave a non-integer (data not valid)")
        out.append(int(val))
    g = 1 + n * (h - 1) + Fraction(n, 2) * sum(1 - Fraction(k, n) for k in ks)
    if sum(out) != g:
        raise AssertionError(f"multiplicities sum to {sum(out)}, genus is {g}")
    return MultiplicityVector(table, tuple(out))


def action_character(d: OrbitData, w: RealizationWitness) -> ClassFunction:
    """Character of the action on holomorphic one-forms of a realizing surface."""
    G = d.group
    if w.group is not G or not w.verify():
        raise CharacterError("witness does not realize a surjection onto the data's group")
    if sorted(w.xi_classes) != sorted(c for c, m in enumerate(d.mult) for _ in range(m)):
        raise CharacterError("witness branch classes differ from the data")
    g = genus(d, w.h)
    N = G.exponent
    vals = [Cyclotomic.rational(g, N)]
    for y in G.classes.reps[1:]:
        K, inc = G.subgroup_group(gens=[y])
        n = K.order
        raw = restrict_raw(d, inc)
        h_y = quotient_genus(d, g, inc)
        mv = cyclic_multiplicities(n, raw.elements(), h_y)
        vals.append(Cyclotomic.from_poly(n, mv.coeffs).lift(N))
    return ClassFunction(G, vals)


def multiplicities(f: ClassFunction, t: CharacterTable) -> MultiplicityVector:
    if f.group is not t.group:
        raise CharacterError("class function and table over different groups")
    out = []
    for i in range(len(t)):
        m = t.multiplicity(f, i)
        if m.denominator != 1:
            raise CharacterError(f"multiplicity {m} of {t.names[i]} is not an integer")
        out.append(int(m))
    return MultiplicityVector(t, tuple(out))


# ---------------------------------------------------------------------------
# induction and restriction
# ---------------------------------------------------------------------------

def _check_inclusion(inc: Homomorphism):
    if not inc.is_injective():
        raise GroupError("induction and restriction need an injective inclusion")


def restrict_cf(f: ClassFunction, inc: Homomorphism) -> ClassFunction:
    """Restrict a class function on ``inc.codomain`` to ``inc.domain``."""
    _check_inclusion(inc)
    if f.group is not inc.codomain:
        raise CharacterError("class function does not live on the codomain")
    H = inc.domain
    return ClassFunction(H, [f.at(inc(r)) for r in H.classes.reps])


def induce(f: ClassFunction, inc: Homomorphism) -> ClassFunction:
    """Induce a class function on ``inc.domain`` up to ``inc.codomain``."""
    _check_inclusion(inc)
    if f.group is not inc.domain:
        raise CharacterError("class function does not live on the domain")
    H, G = inc.domain, inc.codomain
    back = {x: i for i, x in enumerate(inc.image)}
    T = G.cayley
    N = G.exponent
    vals = []
    for g in G.classes.reps:
        acc = Cyclotomic.rational(0, N)
        for x in range(G.order):
            y = int(T[T[G.inv[x], g], x])
            if y in back:
                acc = acc + f.at(back[y])
        vals.append(acc / H.order)
    return ClassFunction(G, vals)


def perm_character_values(G: FiniteGroup, members: Sequence[int]) -> ClassFunction:
    """``Ind_H^G`` of the trivial character, counted directly."""
    S = set(members)
    T = G.cayley
    vals = []
    for g in G.classes.reps:
        cnt = sum(1 for x in range(G.order) if int(T[T[G.inv[x], g], x]) in S)
        if cnt % len(S):
            raise AssertionError("permutation character value is not an integer")
        vals.append(cnt // len(S))
    return ClassFunction(G, vals)


def perm_character(G: FiniteGroup, H, t: CharacterTable) -> MultiplicityVector:
    members = H.members if hasattr(H, "members") else tuple(H)
    if not G.is_subgroup(members):
        raise GroupError("H is not a subgroup")
    return multiplicities(perm_character_values(G, members), t)


def res_matrix(tG: CharacterTable, tH: CharacterTable, inc: Homomorphism) -> list[list[int]]:
    """Row ``i``: multiplicities of ``Res chi_i`` in the irreducibles of H."""
    return [list(multiplicities(restrict_cf(chi, inc), tH).coeffs) for chi in tG.irreducibles]


def ind_matrix(tH: CharacterTable, tG: CharacterTable, inc: Homomorphism) -> list[list[int]]:
    """Row ``i``: multiplicities of ``Ind psi_i`` in the irreducibles of G."""
    return [list(multiplicities(induce(psi, inc), tG).coeffs) for psi in tH.irreducibles]


def apply_matrix(v: Sequence[int], M: Sequence[Sequence[int]]) -> list[int]:
    width = len(M[0]) if M else 0
    out = [0] * width
    for a, row in zip(v, M):
        if a:
            for j, x in enumerate(row):
                out[j] += a * x
    return out


# ---------------------------------------------------------------------------
# rational characters of cyclic groups
# ---------------------------------------------------------------------------

def rational_lattice_check(n: int) -> bool:
    """Permutation characters of ``C_n`` span all Galois-stable multiplicity vectors."""
    from .groups import build_group

    G = build_group(f"cyclic {n}")
    t = char_table(G)
    gens = []
    for d in range(1, n + 1):
        if n % d == 0:
            sub = G.closure([G.power(G.generators[0], n // d)] if n > 1 else [])
            gens.append(list(perm_character(G, sub, t).coeffs))
    stable = []
    for d in range(1, n + 1):
        if n % d == 0:
            stable.append([int(gcd(j, n) == d) for j in range(n)])
    A = LatticeBasis.from_generators(gens, n)
    B = LatticeBasis.from_generators(stable, n)
    return A.as_lists() == B.as_lists()
